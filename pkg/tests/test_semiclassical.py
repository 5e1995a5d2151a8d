from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

from twistlab import (DimensionMismatch, check_bialgebra_cocycle, check_cojacobi, check_cybe,
                      check_jacobi, check_mutual_cocycle, classical_r, cobracket, cobracket_map,
                      coproduct_table, make_borel2, make_gl, universal_R, wedge)
from twistlab.semiclassical import (DualLieTable, make_dual_dj, parse_dual_table,
                                    r_dj_flow_check, r_jordanian)

DUAL_TEXT = (Path(__file__).resolve().parent.parent / "src" / "twistlab" / "data" / "fixtures"
             / "sl4_pet_dual.dual").read_text()


@pytest.fixture(scope="module")
def sl4(sl4_pet):
    g, j, ext, F = sl4_pet
    table = coproduct_table(F)
    return g, F, table


def test_cybe_detects_non_solution():
    g = make_gl(2)
    r = {(g.index["E_12"], g.index["E_21"]): Fraction(1)}
    assert check_cybe(g, r)


def test_jordanian_r_solves_cybe():
    B = make_borel2()
    assert check_cybe(B, wedge(B, "H", "E")) == {}


def test_sl4_classical_r(sl4):
    g, F, table = sl4
    r = classical_r(universal_R(F))
    expected = {}
    for x, y in (("E_34", "E_23"), ("H_12", "E_24")):
        for k, v in wedge(g, x, y).items():
            expected[k] = expected.get(k, 0) + v
    assert r == {k: v for k, v in expected.items() if v}
    assert check_cybe(g, r) == {}


def test_sl4_dual_matches_fixture(sl4):
    g, F, table = sl4
    dual = cobracket(table)
    fixture = parse_dual_table(DUAL_TEXT, dual.names)
    assert dual == fixture
    assert len(fixture.upper_entries()) == 31
    assert check_jacobi(fixture) == {}


def test_sl4_cobracket_axioms(sl4):
    g, F, table = sl4
    delta = cobracket_map(table)
    assert check_cojacobi(g, delta) == {}
    assert check_bialgebra_cocycle(g, delta) == {}


def test_deleting_one_bracket_breaks_jacobi():
    t = parse_dual_table(DUAL_TEXT, make_dual_dj(4).names)
    i, j = t.index["X_34"], t.index["X_43"]
    assert t.bracket_basis(i, j)
    assert check_jacobi(t.without(i, j))


@pytest.mark.parametrize("a,b,expected", [
    ("X_11", "X_12", {"X_12": 1}),
    ("X_12", "X_23", {"X_13": 2}),
    ("X_12", "X_34", {}),
    ("X_21", "X_32", {"X_31": 2}),
    ("X_11", "X_21", {"X_21": 1}),
])
def test_standard_dual_brackets(a, b, expected):
    t = make_dual_dj(4)
    got = t.bracket({t.index[a]: 1}, {t.index[b]: 1})
    assert got == {t.index[k]: v for k, v in expected.items()}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_standard_dual_is_lie(n):
    assert check_jacobi(make_dual_dj(n)) == {}


def test_mutual_cocycle_basics(sl4):
    dj = make_dual_dj(4)
    assert check_mutual_cocycle(dj, dj) == {}
    abelian = DualLieTable(dj.names, {})
    assert check_mutual_cocycle(abelian, dj) == {}
    with pytest.raises(DimensionMismatch):
        check_mutual_cocycle(make_dual_dj(3), dj)


@pytest.mark.parametrize("c", [1, 2, -1])
def test_mutual_cocycle_scale_invariance(sl4, c):
    g, F, table = sl4
    pet_dual = cobracket(table)
    dj = make_dual_dj(4)
    base = set(check_mutual_cocycle(pet_dual, dj))
    assert base
    assert set(check_mutual_cocycle(pet_dual.scaled_basis(c), dj)) == base


# -- r_DJ flow -------------------------------------------------------------------

def flow_ok(n, t):
    return all(not term for term in r_dj_flow_check(n, t))


def test_rdj_flow_grid_n2():
    hits = [Fraction(k, 12) for k in range(-12, 13) if flow_ok(2, [[Fraction(k, 12)]])]
    assert hits == [Fraction(1, 4)]


def test_rdj_flow_grid_n3():
    grid = [Fraction(k, 6) for k in range(-6, 7)]
    hits = [(a, b, d) for a, b, d in product(grid, repeat=3) if flow_ok(3, [[a, b], [b, d]])]
    # H_1 - H_2 commutes with E_13, so t is fixed only up to s (H_1 - H_2) (x) (H_1 - H_2)
    assert len(hits) == 10
    assert all(a == d and a + b == Fraction(1, 2) for a, b, d in hits)
    assert (Fraction(1, 3), Fraction(1, 6), Fraction(1, 3)) in hits


def test_rdj_flow_zero_cartan_fails():
    assert not flow_ok(3, [[0, 0], [0, 0]])


def test_rdj_flow_needs_symmetric_t():
    with pytest.raises(ValueError):
        r_dj_flow_check(3, [[1, 0], [1, 1]])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_jordanian_r_solves_cybe_in_gl(n):
    assert check_cybe(make_gl(n), r_jordanian(n)) == {}
