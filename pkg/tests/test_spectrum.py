from fractions import Fraction
from itertools import product

import pytest
from conftest import CUBE_B2_SMALL, CUBE_B3, CUBE_S2, CUBE_T3, LATTICE_EXAMPLE
from hypothesis import given, settings, strategies as st

from tilepot import (
    CohesiveEnd,
    DegreesOfFreedomError,
    Pot,
    Tile,
    construction_matrix,
    integer_feasible_at,
    min_order,
    parse_pot,
    rref,
    smallest_order,
    spectrum,
)
from tilepot.spectrum import balanced, iter_count_vectors, solve_parametric

F = Fraction


def test_construction_matrix_rows():
    cm = construction_matrix(parse_pot(CUBE_B2_SMALL))
    assert cm.symbols == ("a",)
    assert cm.rows == ((1, -3), (1, 1))
    assert cm.augmented()[-1][-1] == 1


def test_spectrum_unique_point():  # [PAPER] <3r, r>/4r
    sol = spectrum(parse_pot(CUBE_B2_SMALL))
    assert sol.unique
    assert sol.point() == (F(3, 4), F(1, 4))


def test_spectrum_single_self_complementary_tile():  # [TRIVIAL]
    sol = spectrum(parse_pot("a,^a"))
    assert sol.unique and sol.point() == (F(1),)


def test_spectrum_one_free_variable():  # [PAPER] lattice example, r=1
    sol = spectrum(parse_pot(LATTICE_EXAMPLE))
    assert sol.free_count == 1
    assert sol.free_columns == (3,)
    # r = 1, t = 0 of the printed family <r+t, 3r-t, 2r-t, t>/6r
    assert sol.point([0]) == (F(1, 6), F(1, 2), F(1, 3), F(0))
    assert sol.point([F(1, 6)]) == (F(2, 6), F(2, 6), F(1, 6), F(1, 6))


def test_inconsistent_spectrum():
    # both tiles have net +1 on a, so no combination balances
    p = parse_pot("a,a,^a ; a,a,a,^a,^a")
    sol = spectrum(p)
    assert not sol.consistent
    assert min_order(p, 20) == []
    assert smallest_order(p, 20) is None


def test_negative_unique_point_gives_empty_list():
    # balance forces a negative count: r1 = 2, r2 = -1
    p = Pot([Tile(["a", "a", "^a"]), Tile(["a", "a", "a", "^a"])], check_closure=True)
    sol = spectrum(p)
    assert sol.unique
    assert any(x < 0 for x in sol.point())
    assert min_order(p, 50) == []


def test_cube_pots_with_unique_points():  # [DERIVED] exact solve
    for text, point in [
        (CUBE_S2, (F(1, 8), F(2, 8), F(5, 8))),
        (CUBE_T3, tuple(F(x, 8) for x in (2, 1, 2, 1, 1, 1))),
    ]:
        sol = spectrum(parse_pot(text))
        assert sol.unique
        assert sol.point() == point
        assert min_order(parse_pot(text), 16)[0].order == 8


def test_cube_b3_pot_spectrum():  # [DERIVED]
    # eight tiles against five symbols leave two free variables; the
    # all-ones vector is the only witness of order 8 but not the only point
    p = parse_pot(CUBE_B3)
    sol = spectrum(p)
    assert sol.free_count == 2
    ws = min_order(p, 16)
    assert [(w.order, w.counts) for w in ws if w.order < 16] == [(8, (1,) * 8)]
    assert (16, (2, 2, 2, 1, 3, 0, 2, 4)) in [(w.order, w.counts) for w in ws]


def test_min_order_unique():  # [PAPER]
    ws = min_order(parse_pot(CUBE_B2_SMALL), 10)
    assert [(w.order, w.counts) for w in ws] == [(4, (3, 1))]
    assert min_order(parse_pot(CUBE_B2_SMALL), 3) == []


def test_min_order_lattice_example():  # [PAPER] three witnesses for t in {0,1,2}
    ws = min_order(parse_pot(LATTICE_EXAMPLE), 6)
    assert [(w.order, w.counts) for w in ws] == [(6, (1, 3, 2, 0)), (6, (2, 2, 1, 1)), (6, (3, 1, 0, 2))]


def test_integer_feasible_at():
    p = parse_pot(CUBE_B2_SMALL)
    assert integer_feasible_at(p, 4).counts == (3, 1)  # [PAPER]
    assert integer_feasible_at(p, 3) is None  # [DERIVED] brute force below
    assert integer_feasible_at(parse_pot("a,^a"), 1).counts == (1,)


def test_three_free_variables_need_fallback():
    p = parse_pot("a,^a ; a,a,^a,^a ; a,a,a,^a,^a,^a ; a,a,a,a,^a,^a,^a,^a")
    assert spectrum(p).free_count == 3
    with pytest.raises(DegreesOfFreedomError):
        min_order(p, 3)
    ws = min_order(p, 2, fallback=True)
    assert [w.counts for w in ws if w.order == 1] == [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]


def test_witness_proportions():
    w = min_order(parse_pot(CUBE_B2_SMALL), 4)[0]
    assert w.proportions() == (F(3, 4), F(1, 4))
    assert w.to_json() == {"order": 4, "counts": [3, 1]}


# --------------------------------------------------------------------------
# oracles


def _brute_vectors(pot, k):
    cm = construction_matrix(pot)
    out = []
    for R in product(range(k + 1), repeat=len(pot)):
        if sum(R) == k and all(sum(z * r for z, r in zip(row, R)) == 0 for row in cm.rows[:-1]):
            out.append(R)
    return out


_end = st.builds(CohesiveEnd, st.sampled_from("ab"), st.booleans())
_tile = st.lists(_end, min_size=1, max_size=4).map(Tile)


@st.composite
def small_pots(draw, max_tiles=4):
    tiles = draw(st.lists(_tile, min_size=1, max_size=max_tiles, unique=True))
    present = {e for t in tiles for e in t}
    if any(e.complement() not in present for e in present):
        # add the missing complements as one extra tile when that keeps arity <= 4
        extra = sorted({e.complement() for e in present if e.complement() not in present})
        tiles = tiles[: max_tiles - 1] + [Tile(extra[:4])]
    try:
        return Pot(tiles)
    except Exception:
        from hypothesis import reject

        reject()


# [DERIVED] enumeration by brute force over all count vectors with sum k
@settings(derandomize=True, max_examples=120, deadline=None)
@given(small_pots())
def test_count_vectors_match_brute_force(p):
    for k in range(1, 7):
        assert list(iter_count_vectors(p, k)) == _brute_vectors(p, k)


# [DERIVED] min_order's least n is the first k where integer_feasible_at succeeds
@settings(derandomize=True, max_examples=120, deadline=None)
@given(small_pots())
def test_min_order_agrees_with_integer_feasible_at(p):
    try:
        ws = min_order(p, 12, fallback=True)
    except DegreesOfFreedomError:
        return
    first = next((k for k in range(1, 13) if integer_feasible_at(p, k)), None)
    assert (ws[0].order if ws else None) == first
    for w in ws:
        assert balanced(p, w.counts)
        assert sum(w.counts) == w.order
    small = smallest_order(p, 12, fallback=True)
    assert (small.order if small else None) == first


# --------------------------------------------------------------------------
# rref

_q = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def matrices(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 5))
    return [[draw(_q) for _ in range(c)] for _ in range(r)]


def _is_rref(rows, pivots):
    last = -1
    for i, p in enumerate(pivots):
        if p <= last or rows[i][p] != 1:
            return False
        if any(rows[j][p] != 0 for j in range(len(rows)) if j != i):
            return False
        if any(rows[i][c] != 0 for c in range(p)):
            return False
        last = p
    return all(all(x == 0 for x in rows[j]) for j in range(len(pivots), len(rows)))


@settings(derandomize=True, max_examples=100, deadline=None)
@given(matrices())
def test_rref_idempotent_and_solution_preserving(m):
    red, piv = rref(m)
    assert _is_rref(red, piv)
    assert rref(red) == (red, piv)
    ncols = len(m[0]) - 1
    if ncols < 1:
        return
    sol = solve_parametric([list(map(F, r)) for r in m], ncols)
    if not sol.consistent:
        return
    # constants and constants + each basis vector satisfy the original system
    for t in [None] + list(range(sol.free_count)):
        vals = [0] * sol.free_count
        if t is not None:
            vals[t] = 1
        x = sol.point(vals)
        for row in m:
            assert sum(a * b for a, b in zip(row[:ncols], x)) == row[ncols]


def test_rref_keeps_zero_rows():
    red, piv = rref([[1, 2], [2, 4]])
    assert red == [[1, 2], [0, 0]]
    assert piv == [0]
