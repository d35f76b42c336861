import os

import pytest

import ktlab

CORPUS = os.path.join(os.path.dirname(__file__), "..", "..", "corpus")


def test_poly_roundtrip():
    assert ktlab.poly_roundtrip("3/2*x1^2*x2 - x3", 3) == "3/2*x1^2*x2 - x3"


def test_regularity_verdicts():
    assert ktlab.regularity(2, ["x1", "x2"]) == "REGULAR-UP-TO-BOUND(8)"
    assert ktlab.regularity(1, ["x1", "x1"]).startswith("NOT-REGULAR")


def test_koszul_betti_zeros():
    dims = ktlab.koszul_betti(3, ["x1", "x2", "x3"], 3, 6)
    assert dims[(0, 0)] == 1
    assert all(dims[(p, w)] == 0 for p in range(1, 4) for w in range(7))


def test_tate_betti_flat():
    dims = ktlab.tate_betti(3, ["x1*x2", "x1*x3", "x2*x3"], 2, 6)
    assert all(dims[(p, w)] == 0 for p in (1, 2) for w in range(7))


def test_euler_lagrange_and_total_derivative():
    el = ktlab.euler_lagrange(1, 1, "1/2*u1_{0}^2", 1)
    assert el == "u1_{0}"
    assert ktlab.total_derivative(1, 1, "u1_{0}", 1) == "u1_{1}"


def test_run_problem_from_corpus():
    code, text = ktlab.run_file(os.path.join(CORPUS, "maxwell-2d.ktr"))
    assert code == 0
    assert "noether: pass" in text
    code, _ = ktlab.run_file(os.path.join(CORPUS, "koszul-xx.ktr"))
    assert code == 1


def test_parse_error_exit_code():
    code, text = ktlab.run_problem("[problem\nkind = KOSZUL\n")
    assert code == 2
    assert "line 1" in text


def test_structural_error_surfaces():
    with pytest.raises(ktlab.StructuralError):
        ktlab.poly_roundtrip("x9", 2)


def test_jet_demo():
    code, text = ktlab.jet_demo()
    assert code == 0
    assert "pass" in text
