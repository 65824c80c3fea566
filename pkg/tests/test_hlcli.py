import json
from fractions import Fraction

import pytest

from catalog import ADO_CATALOG, H3, H3_LAMBDA, L_BAD, N4

from homlie import hlcli
from homlie.adopipe import ado
from homlie.errors import AntisymmetryConflict, DimensionMismatch, ParseError
from homlie.exactla import Matrix
from homlie.homcore import HomAlgebra
from homlie.homrep import HomRepresentation

H3_TEXT = """# Heisenberg
dim 3
basis e1 e2 e3
bracket e1 e2 = 1 e3
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_examples():
    L = hlcli.parse_algebra("dim 1\nbasis e1\ntwist e1 = 1 e1\n")
    assert L.dim == 1 and L.is_abelian() and L.twist.is_identity()
    H = hlcli.parse_algebra(H3_TEXT)
    assert H.structure[0][1][2] == 1 and H.structure[1][0][2] == -1
    assert H == H3


def test_parse_rationals_and_combinations():
    L = hlcli.parse_algebra("dim 2\nbasis a b\ntwist a = 1/2 a - 3 b\ntwist b = -2/3 b\n")
    assert L.twist == Matrix.from_rows([[Fraction(1, 2), 0], [-3, Fraction(-2, 3)]])
    assert L.names == ("a", "b")


def test_parse_errors():
    with pytest.raises(AntisymmetryConflict):
        hlcli.parse_algebra(H3_TEXT + "bracket e2 e1 = 1 e3\n")
    with pytest.raises(DimensionMismatch):
        hlcli.parse_algebra("dim 2\nbasis e1 e2 e3\n")
    with pytest.raises(ParseError) as info:
        hlcli.parse_algebra("dim 2\nbasis e1 e2\nbracket e1 e9 = 1 e2\n")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        hlcli.parse_algebra(H3_TEXT + "bracket e1 e2 = 1 e3\n")
    with pytest.raises(ParseError):
        hlcli.parse_algebra("dim 1\nbasis e1\nwobble\n")


def test_consistent_reverse_bracket_is_accepted():
    L = hlcli.parse_algebra(H3_TEXT + "bracket e2 e1 = -1 e3\n")
    assert L == H3


@pytest.mark.parametrize("name", sorted(ADO_CATALOG))
def test_algebra_round_trip(name):
    L = ADO_CATALOG[name][0]
    back = hlcli.parse_algebra(hlcli.serialize_algebra(L))
    assert back == L and back.names == L.names


def test_associative_round_trip():
    A = HomAlgebra.from_brackets(2, {(0, 0): (0, 1), (0, 1): (1, 0)}, flavor="associative")
    assert hlcli.parse_algebra(hlcli.serialize_algebra(A)) == A


def test_rep_round_trip(tmp_path):
    rho = ado(H3_LAMBDA).representation
    inline = hlcli.serialize_rep(rho)
    back = hlcli.parse_rep(inline)
    assert back.actions == rho.actions and back.beta == rho.beta and back.algebra == H3_LAMBDA
    write(tmp_path, "h3l.hla", hlcli.serialize_algebra(H3_LAMBDA))
    ref = hlcli.serialize_rep(rho, "h3l.hla")
    assert hlcli.parse_rep(ref, base_dir=tmp_path) == rho


def test_rep_defaults():
    text = "algebra {\n" + H3_TEXT + "}\nmodule_dim 2\naction e1 row 1 = 0 1\n"
    rho = hlcli.parse_rep(text)
    assert rho.actions[0] == Matrix.unit(2, 2, 0, 1)
    assert rho.actions[1].is_zero() and rho.beta.is_identity()


def test_certificate_round_trip():
    cert = ado(H3)
    back = hlcli.parse_certificate(hlcli.serialize_certificate(cert))
    assert back.representation == cert.representation
    assert back.trace == cert.trace and back.nilindex == cert.nilindex and back.valid


def test_check_command(tmp_path, capsys):
    h3 = write(tmp_path, "h3.hla", H3_TEXT)
    assert hlcli.run(["check", h3]) == 0
    out = capsys.readouterr().out
    assert "hom-jacobi: true" in out
    bad = write(tmp_path, "bad.hla", hlcli.serialize_algebra(L_BAD))
    assert hlcli.run(["check", bad]) == 1
    assert hlcli.run(["--json", "check", bad]) == 1
    report = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert report["hom-jacobi"] is False and report["hom-jacobi-witness"] == ["0", "1", "2"]


def test_error_exit_code(tmp_path, capsys):
    clash = write(tmp_path, "clash.hla", H3_TEXT + "bracket e2 e1 = 1 e3\n")
    assert hlcli.run(["check", clash]) == 2
    assert "antisymmetry-conflict" in capsys.readouterr().err
    assert hlcli.run(["check", str(tmp_path / "missing.hla")]) == 2
    assert hlcli.run(["bogus"]) == 2


def test_free_and_present(tmp_path, capsys):
    out = str(tmp_path / "m.hla")
    assert hlcli.run(["free", "--gens", "2", "--class", "3", "--poly", "T-1", "--out", out]) == 0
    M = hlcli.parse_algebra((tmp_path / "m.hla").read_text())
    assert M.dim == 3
    h3 = write(tmp_path, "h3.hla", H3_TEXT)
    capsys.readouterr()
    assert hlcli.run(["--json", "present", h3]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["free-dim"] == 6 and report["kernel-dim"] == 3


def test_twist_commands(tmp_path, capsys):
    h3 = write(tmp_path, "h3.hla", H3_TEXT)
    endo = write(tmp_path, "phi.txt", "map e1 = 2 e1\nmap e2 = 3 e2\nmap e3 = 6 e3\n")
    twisted = str(tmp_path / "h3l.hla")
    assert hlcli.run(["yau-twist", h3, "--endo", endo, "--out", twisted]) == 0
    assert hlcli.parse_algebra((tmp_path / "h3l.hla").read_text()) == H3_LAMBDA
    plain = str(tmp_path / "plain.hla")
    assert hlcli.run(["untwist", twisted, "--out", plain]) == 0
    assert hlcli.parse_algebra((tmp_path / "plain.hla").read_text()) == H3
    cur = str(tmp_path / "cur.hla")
    assert hlcli.run(["current", h3, "--n", "3", "--out", cur]) == 0
    assert hlcli.parse_algebra((tmp_path / "cur.hla").read_text()).dim == 6
    assert hlcli.run(["--json", "info", h3]) == 0
    info = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert info["center"] == ["e3"] and info["nilindex"] == 3


def test_ado_verify_and_tensor(tmp_path, capsys):
    n4 = write(tmp_path, "n4.hla", hlcli.serialize_algebra(N4))
    rep, cert = str(tmp_path / "n4.rep"), str(tmp_path / "n4.cert")
    assert hlcli.run(["ado", n4, "--out", rep, "--cert", cert]) == 0
    assert hlcli.run(["verify-rep", n4, rep]) == 0
    assert hlcli.run(["verify-rep", n4, cert]) == 0
    sq = str(tmp_path / "sq.rep")
    assert hlcli.run(["tensor-rep", rep, rep, "--out", sq]) == 0
    assert hlcli.run(["verify-rep", n4, sq]) == 0
    capsys.readouterr()


def test_verify_rep_reports_false_verdicts(tmp_path):
    h3 = write(tmp_path, "h3.hla", H3_TEXT)
    # the adjoint representation kills the center
    ad = HomRepresentation(H3, 3, tuple(H3.left_mult_matrix(c) for c in Matrix.identity(3).columns()),
                           Matrix.identity(3))
    rep = write(tmp_path, "ad.rep", hlcli.serialize_rep(ad, "h3.hla"))
    assert hlcli.run(["verify-rep", h3, rep]) == 1
