#!/usr/bin/env python3
"""Generate an HTML report of codim H against the f^t bound across inputs."""

from __future__ import annotations

import argparse
import html
import sys
import time
from collections import Counter
from pathlib import Path
from typing import Any, Iterable, Iterator, NamedTuple


class Row(NamedTuple):
    problem: str
    subspace: str
    t: int
    codim_n: int
    codim_h: int | None
    bound: int | None
    closure: int | None
    seconds: float
    error: str = ""


def _pct(numerator: int, denominator: int) -> float:
    if denominator == 0:
        return 0.0
    return (numerator / denominator) * 100


def _import_pycharsub() -> Any:
    try:
        import pycharsub  # type: ignore

        return pycharsub
    except ModuleNotFoundError:
        repo_root = Path(__file__).resolve().parents[1]
        if str(repo_root) not in sys.path:
            sys.path.insert(0, str(repo_root))

    try:
        import pycharsub  # type: ignore

        return pycharsub
    except ModuleNotFoundError as exc:
        missing = exc.name or "dependency"
        raise SystemExit(
            "Could not import pycharsub runtime dependency "
            f"({missing}).\n"
            "Install project dependencies and rerun, for example:\n"
            "  python3 -m venv .venv\n"
            "  .venv/bin/pip install -e '.[dev]'\n"
            "  .venv/bin/python tools/bound_sweep_report.py -o bound-report.html"
        ) from exc


def _corpus_instances(sources: list[str]) -> Iterator[tuple[str, str, Any, Any, Any]]:
    pycharsub = _import_pycharsub()
    from pycharsub.problem import corpus_names  # type: ignore

    for source in sources or corpus_names():
        problem = pycharsub.load(source)
        phis = problem.morphism_set()
        for label, subspace in problem.subspaces.items():
            yield Path(source).stem, label, problem.algebra, phis, subspace


def _random_instances(count: int, seed: int) -> Iterator[tuple[str, str, Any, Any, Any]]:
    """Random algebras over GF(2), GF(3), GF(5) of dimension at most 4.

    Half of them are ``B ⊕ B`` for a random ``B`` with the swap of the two
    copies as automorphism; the rest are zero algebras under a few random
    invertible matrices whose closure stays within 24 elements.
    """
    _import_pycharsub()
    import numpy as np
    from pycharsub.algebra import StructureAlgebra  # type: ignore
    from pycharsub.exactla import FieldPrime, matrix_rank  # type: ignore
    from pycharsub.exceptions import MorphismCapExceeded  # type: ignore
    from pycharsub.morphisms import closure, validate_morphism  # type: ignore
    from pycharsub.types import ProductEntry  # type: ignore

    rng = np.random.default_rng(seed)
    made = 0
    while made < count:
        field = FieldPrime(int(rng.choice([2, 3, 5])))
        p = field.p
        if made % 2 == 0:
            half = int(rng.integers(1, 3))
            d = 2 * half
            entries = []
            for i in range(half):
                for j in range(half):
                    for k in range(half):
                        c = int(rng.integers(0, p))
                        entries.append(ProductEntry(i, j, k, c))
                        entries.append(ProductEntry(i + half, j + half, k + half, c))
            algebra = StructureAlgebra(field, d, tuple(entries))
            swap = [[int(j == (i + half) % d) for j in range(d)] for i in range(d)]
            gens = [validate_morphism(algebra, swap)]
            kind = "double"
        else:
            d = int(rng.integers(1, 5))
            algebra = StructureAlgebra.zero_algebra(field, d)
            wanted = int(rng.integers(1, 3))
            gens = []
            while len(gens) < wanted:
                m = rng.integers(0, p, size=(d, d)).tolist()
                if matrix_rank(field, m, d) == d:
                    gens.append(validate_morphism(algebra, m))
            kind = "zero"
        try:
            phis = closure(gens, 24)
        except MorphismCapExceeded:
            continue

        rank = max(0, d - int(rng.integers(0, 3)))
        rows = rng.integers(0, p, size=(rank, d)).tolist()
        n = algebra.span(rows)
        if n.codim > 2:
            continue
        made += 1
        yield f"random-{made}", f"{kind} GF({p})^{d}", algebra, phis, n


def sweep(
    sources: list[str], max_t: int, random_count: int = 0, seed: int = 0
) -> list[Row]:
    pycharsub = _import_pycharsub()
    from pycharsub.exceptions import Error  # type: ignore

    instances: Iterable[tuple[str, str, Any, Any, Any]]
    if random_count:
        instances = _random_instances(random_count, seed)
    else:
        instances = _corpus_instances(sources)

    rows: list[Row] = []
    for name, label, algebra, phis, subspace in instances:
        for t in range(1, max_t + 1):
            request = pycharsub.CharSubspaceRequest(algebra, subspace, phis, t)
            started = time.perf_counter()
            try:
                cert = pycharsub.solve(request)
            except Error as exc:
                elapsed = time.perf_counter() - started
                error = f"{type(exc).__name__}: {exc}"
                rows.append(
                    Row(name, label, t, subspace.codim, None, None, None, elapsed, error)
                )
                continue
            elapsed = time.perf_counter() - started
            rows.append(
                Row(
                    name,
                    label,
                    t,
                    cert.codim_N,
                    cert.codim_H,
                    cert.bound,
                    cert.closure_size,
                    elapsed,
                )
            )
    return rows


def build_report(rows: list[Row], top_n: int = 25) -> str:
    solved = [row for row in rows if not row.error]
    failed = [row for row in rows if row.error]
    tight = [row for row in solved if row.codim_h == row.bound and row.bound]
    solved_pct = _pct(len(solved), len(rows))
    total_seconds = sum(row.seconds for row in rows)

    error_counts = Counter(row.error.split(":")[0] for row in failed)

    def ratio(row: Row) -> float:
        assert row.codim_h is not None and row.bound is not None
        return _pct(row.codim_h, row.bound) if row.bound else 0.0

    sweep_rows = "\n".join(
        "<tr>"
        f"<td>{html.escape(row.problem)}</td>"
        f"<td>{html.escape(row.subspace)}</td>"
        f"<td>{row.t}</td>"
        f"<td>{row.codim_n}</td>"
        f"<td>{row.codim_h}</td>"
        f"<td>{row.bound}</td>"
        f"<td><div class='bar'><div style='width: {ratio(row):.2f}%'></div></div></td>"
        f"<td>{row.closure}</td>"
        f"<td>{row.seconds * 1000:.1f}</td>"
        "</tr>"
        for row in solved
    )
    if not sweep_rows:
        sweep_rows = "<tr><td colspan='9'>No runs</td></tr>"

    slowest_rows = "\n".join(
        "<tr>"
        f"<td>{html.escape(row.problem)}</td>"
        f"<td>{html.escape(row.subspace)}</td>"
        f"<td>{row.t}</td>"
        f"<td>{row.seconds * 1000:.1f}</td>"
        "</tr>"
        for row in sorted(rows, key=lambda r: r.seconds, reverse=True)[:top_n]
    )
    if not slowest_rows:
        slowest_rows = "<tr><td colspan='4'>No runs</td></tr>"

    error_rows = "\n".join(
        "<tr>"
        f"<td>{html.escape(row.problem)}</td>"
        f"<td>{html.escape(row.subspace)}</td>"
        f"<td>{row.t}</td>"
        f"<td>{html.escape(row.error)}</td>"
        "</tr>"
        for row in failed[:top_n]
    )
    if not error_rows:
        error_rows = "<tr><td colspan='4'>None</td></tr>"

    kind_rows = "\n".join(
        "<tr>" f"<td>{html.escape(kind)}</td>" f"<td>{count}</td>" "</tr>"
        for kind, count in error_counts.most_common(top_n)
    )
    if not kind_rows:
        kind_rows = "<tr><td colspan='2'>None</td></tr>"

    return f"""<!doctype html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>pycharsub Bound Sweep</title>
<style>
body {{ margin: 2em; font-family: system-ui, sans-serif; color: #111827; background: #f9fafb; }}
h1, h2 {{ margin: 0 0 0.5em; }}
.grid {{ display: flex; flex-wrap: wrap; gap: 1em; margin-bottom: 1.5em; }}
.card {{
  flex: 1 1 12em; background: #fff; border: 1px solid #e5e7eb; border-radius: 8px; padding: 1em;
}}
.metric {{ font-size: 1.8em; font-weight: 600; }}
.ok {{ color: #15803d; }}
.warn {{ color: #c2410c; }}
.bar {{ min-width: 6em; height: 0.7em; background: #e5e7eb; border-radius: 4px; overflow: hidden; }}
.bar > div {{ height: 100%; background: #2563eb; }}
table {{ width: 100%; border-collapse: collapse; background: #fff; }}
th, td {{ text-align: right; padding: 0.4em 0.8em; border-bottom: 1px solid #f3f4f6; }}
th {{ background: #f3f4f6; }}
section {{ margin-bottom: 1.5em; }}
</style>
</head>
<body>
<h1>Characteristic Subspace Bound Sweep</h1>

<div class="grid">
  <div class="card">
    <div>Runs</div>
    <div class="metric">{len(rows)}</div>
  </div>
  <div class="card">
    <div>Solved</div>
    <div class="metric ok">{len(solved)} ({solved_pct:.2f}%)</div>
  </div>
  <div class="card">
    <div>codim H equal to the bound</div>
    <div class="metric">{len(tight)}</div>
  </div>
  <div class="card">
    <div>Stopped by a cap or overflow</div>
    <div class="metric {'warn' if failed else 'ok'}">{len(failed)}</div>
  </div>
  <div class="card">
    <div>Total time</div>
    <div class="metric">{total_seconds:.2f}s</div>
  </div>
</div>

<section>
  <h2>codim H against f^t(codim N)</h2>
  <table>
    <thead><tr><th>Input</th><th>N</th><th>t</th><th>codim N</th><th>codim H</th>
    <th>Bound</th><th>codim H / bound</th><th>Closure</th><th>ms</th></tr></thead>
    <tbody>{sweep_rows}</tbody>
  </table>
</section>

<section>
  <h2>Slowest Runs (Top {top_n})</h2>
  <table>
    <thead><tr><th>Input</th><th>N</th><th>t</th><th>ms</th></tr></thead>
    <tbody>{slowest_rows}</tbody>
  </table>
</section>

<section>
  <h2>Stopped Runs (Top {top_n})</h2>
  <table>
    <thead><tr><th>Input</th><th>N</th><th>t</th><th>Error</th></tr></thead>
    <tbody>{error_rows}</tbody>
  </table>
</section>

<section>
  <h2>Stop Reasons</h2>
  <table>
    <thead><tr><th>Reason</th><th>Count</th></tr></thead>
    <tbody>{kind_rows}</tbody>
  </table>
</section>
</body>
</html>
"""


def main() -> int:
    parser = argparse.ArgumentParser(
        description="Generate an HTML report of codim H against the f^t bound."
    )
    parser.add_argument(
        "inputs", nargs="*", help="Problem files or bundled input names (default: all bundled)"
    )
    parser.add_argument(
        "-o",
        "--output",
        type=Path,
        default=Path("bound-report.html"),
        help="Output HTML file path (default: bound-report.html)",
    )
    parser.add_argument(
        "--max-t", type=int, default=3, help="Largest degree bound to sweep (default: 3)"
    )
    parser.add_argument(
        "--random",
        type=int,
        default=0,
        help="Sweep this many random instances instead of the inputs (default: 0)",
    )
    parser.add_argument("--seed", type=int, default=0, help="Seed for --random (default: 0)")
    parser.add_argument(
        "--top",
        type=int,
        default=25,
        help="Number of rows to include in top tables (default: 25)",
    )
    args = parser.parse_args()

    report_html = build_report(
        sweep(args.inputs, args.max_t, args.random, args.seed), top_n=args.top
    )
    args.output.write_text(report_html, encoding="utf-8")
    print(f"Report written to: {args.output.resolve()}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
