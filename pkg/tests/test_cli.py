"""CLI: certificates, determinism, exit codes."""

import json
import os

import pytest

from homvir.cli import (
    EXIT_BAD_FIXTURE,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_WINDOW,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_verify_axioms_pass(capsys):
    code, cert = run_json(capsys, "verify-axioms", "--algebra", "witt-q", "--window", "2")
    assert code == EXIT_OK
    assert cert["schema"] == 1
    assert cert["status"] == "pass"
    assert cert["command"].startswith("homvir verify-axioms")
    names = [c["name"] for c in cert["checks"]]
    assert any(n.startswith("hom-jacobi") for n in names)


def test_verify_axioms_all_algebras(capsys):
    code, cert = run_json(capsys, "verify-axioms", "--window", "2")
    assert code == EXIT_OK
    assert len(cert["checks"]) == 20  # four sweeps for each of five algebras


def test_certificates_are_deterministic(capsys):
    _, out1, _ = run(capsys, "verify-cocycle", "--algebra", "witt-q", "--cocycle", "phi0",
                     "--b-values", "--window", "2")
    _, out2, _ = run(capsys, "verify-cocycle", "--algebra", "witt-q", "--cocycle", "phi0",
                     "--b-values", "--window", "2")
    assert out1 == out2


def test_unknown_algebra_exit_code(capsys):
    code, out, err = run(capsys, "verify-axioms", "--algebra", "nope", "--window", "2")
    assert code == EXIT_USAGE
    assert "unknown algebra" in err


def test_window_too_small_exit_code(capsys):
    code, out, err = run(capsys, "verify-axioms", "--algebra", "witt-q", "--window", "1")
    assert code == EXIT_WINDOW
    assert "window" in err


def test_malformed_fixture_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('[{"tuple": [["L", "1"]], "value": "not ( a scalar"}]')
    code, out, err = run(capsys, "verify-cocycle", "--algebra", "witt-q",
                         "--cocycle", str(bad), "--window", "2")
    assert code == EXIT_BAD_FIXTURE
    assert "malformed fixture" in err


def test_cocycle_fixture_roundtrip(tmp_path, capsys):
    # a coboundary loaded from a fixture file passes the cocycle sweep
    from homvir.cochain import cochain_to_fixture, delta_trivial, Cochain
    from homvir.superalg import witt_q, L, EVEN
    from homvir.qfield import QRat

    w = witt_q()
    h = Cochain(w, 1, EVEN, "scalar")
    h.set((L(1),), QRat.const(3))
    dh = delta_trivial(h, w)
    values = {}
    f = Cochain(w, 2, EVEN, "scalar")
    for x in w.basis_window(3):
        for y in w.basis_window(3):
            if (x, y) <= (y, x) and not dh.value(x, y).is_zero:
                f.set((x, y), dh.value(x, y))
    path = tmp_path / "cob.json"
    path.write_text(json.dumps(cochain_to_fixture(f)))
    code, cert = run_json(capsys, "verify-cocycle", "--algebra", "witt-q",
                          "--cocycle", str(path), "--window", "2")
    assert code == EXIT_OK


def test_extend_emits_structure_constants(capsys):
    code, cert = run_json(capsys, "extend", "--base", "witt-q", "--cocycle", "phi0",
                          "--check-window", "2")
    assert code == EXIT_OK
    assert cert["central_parity"] == 0
    assert cert["structure_constants_sample"]


def test_recurrence_command(capsys):
    code, cert = run_json(capsys, "recurrence", "--window", "4", "--shifts=-1..1")
    assert code == EXIT_OK
    dims = {c["name"]: c["info"]["solution_dimension"]
            for c in cert["checks"] if c["name"].startswith("recurrence-solve")}
    assert dims == {"recurrence-solve[s=-1]": 0, "recurrence-solve[s=0]": 1, "recurrence-solve[s=1]": 0}


def test_equivalence_iso_command(capsys):
    code, cert = run_json(capsys, "equivalence", "--iso", "ramond:neveu-schwarz", "--window", "2")
    assert code == EXIT_OK


def test_equivalence_shear_command(capsys):
    code, cert = run_json(capsys, "equivalence", "--window", "3")
    assert code == EXIT_OK


def test_deform_preset_command(capsys):
    code, cert = run_json(capsys, "deform", "--preset", "m2", "--order", "2", "--window", "2")
    assert code == EXIT_OK
    names = [c["name"] for c in cert["checks"]]
    assert any("order-p-matrix" in n for n in names)
    assert any("normal-form-transport" in n for n in names)


def test_deform_fixture(tmp_path, capsys):
    # first-order component = the odd cocycle on the even extension, loaded
    # from a fixture file
    from homvir.cochain import cochain_to_fixture, lift_scalar_cochain, make_phi1, Cochain
    from homvir.superalg import ramond

    hr = ramond()
    phi1l = lift_scalar_cochain(make_phi1(), hr)
    f = Cochain(hr, 2, phi1l.parity, "adjoint")
    for x in hr.basis_window(4):
        for y in hr.basis_window(4):
            if x <= y and not phi1l.value(x, y).is_zero:
                f.set((x, y), phi1l.value(x, y))
    path = tmp_path / "order1.json"
    path.write_text(json.dumps({"components": {"1": cochain_to_fixture(f)}}))
    code, cert = run_json(capsys, "deform", "--algebra", "ramond", "--fixture", str(path),
                          "--order", "2", "--window", "2")
    assert code == EXIT_OK


def test_failing_check_gives_exit_one(tmp_path, capsys):
    # a non-cocycle fixture: verify-cocycle reports fail with exit code 1
    bad = [{"tuple": [["L", "1"], ["L", "2"]], "value": "1"}]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, cert = run_json(capsys, "verify-cocycle", "--algebra", "witt-q",
                          "--cocycle", str(path), "--window", "2")
    assert code == EXIT_CHECK_FAILED
    assert cert["status"] == "fail"
    failing = [c for c in cert["checks"] if c["status"] == "fail"]
    assert failing and failing[0]["witnesses"]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "verify-axioms", "--algebra", "witt-q", "--window", "2",
                       "--out", str(path))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(path.read_text())["status"] == "pass"


def test_threads_env_recorded(capsys, monkeypatch):
    monkeypatch.setenv("HOMVIR_THREADS", "4")
    code, cert = run_json(capsys, "verify-axioms", "--algebra", "witt-q", "--window", "2")
    assert code == EXIT_OK
    assert cert["environment"]["threads"] == 4
