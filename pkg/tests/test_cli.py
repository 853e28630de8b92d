from __future__ import annotations

import io
import json

import pytest

from pycharsub.cli import (
    EXIT_CAP,
    EXIT_INPUT,
    EXIT_INVALID,
    EXIT_LAW,
    EXIT_OK,
    EXIT_VIOLATION,
    exit_code,
    main,
)
from pycharsub.exceptions import (
    CapExceeded,
    HypothesisFailed,
    NotMultiplicative,
    RouteDisagreement,
    SchemaError,
)

from .conftest import ASSETS


def run(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def no_caps(monkeypatch: pytest.MonkeyPatch):
    for var in ("PYCHARSUB_CLOSURE_CAP", "PYCHARSUB_MORPHISM_CAP", "PYCHARSUB_EXHAUSTIVE_BOUND"):
        monkeypatch.delenv(var, raising=False)


def test_exit_codes():
    assert exit_code(SchemaError("$", "bad")) == EXIT_INPUT
    assert exit_code(NotMultiplicative(0, 2)) == EXIT_INVALID
    assert exit_code(HypothesisFailed("no")) == EXIT_INVALID
    assert exit_code(CapExceeded("closure", 2, 3)) == EXIT_CAP
    assert exit_code(RouteDisagreement("routes disagree")) == EXIT_VIOLATION
    assert exit_code(FileNotFoundError("x")) == EXIT_INPUT


def test_validate(no_caps):
    code, text = run("validate", "--input", "tri2_gf2")
    assert code == EXIT_OK
    assert text.rstrip().endswith("ok")
    assert "subspace N" in text and "word comm" in text

    code, text = run("validate", "--input", str(ASSETS / "lie_not_alternating.json"))
    assert code == EXIT_INVALID
    assert "FAIL flavor lie: alternating law fails" in text


@pytest.mark.parametrize("asset", ["malformed.json", "bad_schema.json", "missing.json"])
def test_validate_bad_input(asset: str, capsys: pytest.CaptureFixture[str]):
    assert run("validate", "--input", str(ASSETS / asset))[0] == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error:")


def test_char_subspace_roundtrip(no_caps, tmp_path):
    cert = tmp_path / "cert.json"
    code, text = run(
        "char-subspace", "--input", "tri2_gf2", "--subspace", "N", "--t", "2", "--out", str(cert)
    )
    assert code == EXIT_OK
    assert f"certificate written to {cert}" in text
    assert json.loads(cert.read_text())["certificate"]["H"]["codim"] == 1

    code, text = run("verify", "--input", "tri2_gf2", "--cert", str(cert))
    assert code == EXIT_OK
    assert "verified" in text

    document = json.loads(cert.read_text())
    document["certificate"]["H"]["codim"] = 0
    cert.write_text(json.dumps(document))
    code, text = run("verify", "--input", "tri2_gf2", "--cert", str(cert))
    assert code == EXIT_INVALID
    assert "REJECTED" in text

    cert.write_text("{")
    assert run("verify", "--input", "tri2_gf2", "--cert", str(cert))[0] == EXIT_INPUT
    assert run("verify", "--input", "strict3_gf2", "--cert", str(tmp_path / "none"))[0] == 1


def test_char_subspace_stdout(no_caps):
    code, text = run(
        "char-subspace", "--input", "tri2_gf2", "--subspace", "N", "--t", "2", "--timing"
    )
    assert code == EXIT_OK
    document = json.loads(text[text.index("{\n") :])
    assert document["status"] == "pass"
    assert "seconds" in document["timing"]
    assert document["certificate"]["command"]["words"] is None


def test_char_subspace_family(no_caps):
    code, text = run(
        "char-subspace", "--input", "tri2_gf2", "--subspace", "N", "--t", "3", "--family"
    )
    assert code == EXIT_OK
    for k, bound in ((1, 2), (2, 6), (3, 42)):
        assert f"<= {bound}" in text and f"H_{k}" in text


def test_char_subspace_modes(no_caps):
    base = ("char-subspace", "--input", "tri2_gf2", "--t", "2")
    assert run(*base, "--subspace", "N", "--mode", "identity")[0] == EXIT_INPUT
    assert run(*base, "--subspace", "N", "--words", "comm,prod")[0] == EXIT_OK
    assert run(*base, "--subspace", "N", "--words", "jacobi")[0] == EXIT_INPUT
    assert run(*base, "--subspace", "Q")[0] == EXIT_INPUT

    code, _ = run(*base, "--subspace", "N", "--mode", "identity", "--target-word", "comm")
    assert code == EXIT_OK
    code, _ = run(*base, "--subspace", "G", "--mode", "identity", "--target-word", "comm")
    assert code == EXIT_INVALID


def test_caps(no_caps, monkeypatch: pytest.MonkeyPatch):
    base = ("char-subspace", "--input", "tri2_gf2", "--subspace", "N", "--t", "2")
    assert run(*base, "--closure-cap", "2")[0] == EXIT_CAP
    assert run(*base, "--closure-cap", "0")[0] == EXIT_INPUT
    assert run(*base, "--t", "9")[0] == EXIT_CAP

    monkeypatch.setenv("PYCHARSUB_CLOSURE_CAP", "2")
    assert run(*base)[0] == EXIT_CAP
    assert run(*base, "--closure-cap", "100")[0] == EXIT_OK

    monkeypatch.setenv("PYCHARSUB_CLOSURE_CAP", "lots")
    assert run(*base)[0] == EXIT_INPUT


def test_series(no_caps, tmp_path):
    cert = tmp_path / "series.json"
    code, text = run("series", "--input", "tri2_gf2", "--route", "both", "--out", str(cert))
    assert code == EXIT_OK
    assert json.loads(cert.read_text())["certificate"]["routes"] == {"direct": 0, "predicate": 0}
    assert run("verify", "--input", "tri2_gf2", "--cert", str(cert))[0] == EXIT_OK

    assert run("series", "--input", "sl2_gf5")[0] == EXIT_INPUT


def test_laws(no_caps):
    code, text = run("laws", "--input", "tri2_gf2")
    assert code == EXIT_OK
    assert "FAIL" not in text
    assert "exhaustive" in text

    code, text = run("laws", "--input", "heis_gf5", "--class", "abelian")
    assert code == EXIT_LAW
    assert "ideal_sum" in text

    code, text = run("laws", "--input", "tri2_gf2", "--predicate", "composed")
    assert code == EXIT_OK
    assert len(text.splitlines()) == 3


def test_laws_invalid_input(no_caps):
    code, text = run("laws", "--input", str(ASSETS / "lie_not_alternating.json"))
    assert code == EXIT_INVALID
    assert text.startswith("FAIL")


def test_usage(capsys: pytest.CaptureFixture[str]):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    assert "PYCHARSUB_CLOSURE_CAP" in capsys.readouterr().out

    with pytest.raises(SystemExit):
        main(["char-subspace", "--input", "tri2_gf2"])
