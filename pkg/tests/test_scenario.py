import pytest
from conftest import CUBE_B3, CUBE_S2, CUBE_T3, LATTICE_EXAMPLE

from tilepot import (
    DegenerateInputError,
    check_scenario,
    collapse_bonds,
    find_realization,
    generate,
    isomorphic,
    parse_pot,
    search_optimum,
    t1_bounds,
)
from tilepot.scenario import (
    FAILS,
    HOLDS,
    INDETERMINATE,
    _key_from_pot,
    _pot_from_key,
    canonical_pot,
    canonical_pot_key,
    design_space_size,
)

CUBE = generate("cube")


def test_scenario_one_and_two_hold_for_cube_pot():  # [PAPER]
    p = parse_pot(CUBE_S2)
    assert check_scenario(p, CUBE, 1).status == HOLDS
    rep = check_scenario(p, CUBE, 2)
    assert rep.holds is True
    assert rep.certificate.is_valid()


def test_scenario_two_fails_with_smaller_witness():  # [PAPER] one bond type is not enough for the cube
    p = parse_pot("a,a,^a ; ^a,^a,^a")
    rep = check_scenario(p, CUBE, 2)
    assert rep.status == FAILS
    assert rep.violation["kind"] == "smaller_order"
    assert rep.violation["witness"].order == 4


def test_scenario_fails_when_not_realized():
    rep = check_scenario(parse_pot("a,a,a ; ^a,^a,^a"), generate("complete", 4), 3)
    assert rep.status == FAILS
    assert rep.violation == {"kind": "not_realized"}


def test_scenario_three_holds_for_t3_and_b3_pots():  # [PAPER]
    for text in (CUBE_T3, CUBE_B3):
        rep = check_scenario(parse_pot(text), CUBE, 3)
        assert rep.status == HOLDS


def test_scenario_three_fails_for_scenario_two_pot():  # [DERIVED]
    rep = check_scenario(parse_pot(CUBE_S2), CUBE, 3)
    assert rep.status == FAILS
    other = rep.violation["graph"]
    assert other.n == 8 and other.is_connected()
    assert not isomorphic(other, CUBE)[0]
    assert rep.violation["graph_certificate"].is_valid()


def test_budget_gives_indeterminate():
    rep = check_scenario(parse_pot(CUBE_T3), CUBE, 3, budget=5)
    assert rep.status == INDETERMINATE
    assert rep.holds is None


def test_three_free_variables_without_fallback_is_indeterminate():
    p = parse_pot("a,^a ; a,a,^a,^a ; a,a,a,^a,^a,^a ; a,a,a,a,^a,^a,^a,^a")
    g = generate("cycle", 3)
    assert check_scenario(p, g, 2, fallback=False).status == INDETERMINATE
    assert check_scenario(p, g, 2, fallback=True).status == FAILS


def test_report_json():
    data = check_scenario(parse_pot(CUBE_S2), CUBE, 3).to_json()
    assert data["result"] == "fails"
    assert data["violation"]["kind"] == "non_isomorphic"
    assert set(data["violation"]["graph"]) == {"vertices", "edges"}


def test_invalid_level():
    with pytest.raises(ValueError):
        check_scenario(parse_pot(CUBE_S2), CUBE, 4)


def test_lattice_example_fails_scenario_three():  # [PAPER] a second class exists at order 6
    rep = check_scenario(parse_pot(LATTICE_EXAMPLE), generate("square_lattice", 2, 3), 3)
    assert rep.status == FAILS


# --------------------------------------------------------------------------
# canonical pot keys


def test_canonical_key_symmetries():
    a = parse_pot("a,b,b ; a,a,^b ; a,^a,^a")
    b = parse_pot("b,a,a ; b,b,^a ; b,^b,^b")  # swap names
    c = parse_pot("^a,b,b ; ^a,^a,^b ; ^a,a,a")  # flip a's hats
    keys = {canonical_pot_key(_key_from_pot(p)) for p in (a, b, c)}
    assert len(keys) == 1
    assert canonical_pot(a) == canonical_pot(c)


def test_key_round_trip():
    p = parse_pot(CUBE_S2)
    assert _pot_from_key(_key_from_pot(p)) == p


def test_design_space_size_small():
    # one edge: one design per symbol count after symmetry
    assert design_space_size(1, 3) == 1
    # two edges, one symbol: orientation of the second edge matters
    assert design_space_size(2, 1) == 2
    assert design_space_size(2, 2) == 3


# --------------------------------------------------------------------------
# optimum search


def test_t1_bounds():
    assert t1_bounds(CUBE) == (1, 2)
    assert t1_bounds(generate("square_lattice", 3, 3)) == (3, 4)
    assert t1_bounds(generate("square_lattice", 2, 5)) == (2, 3)
    assert t1_bounds(generate("octahedron")) == (1, 1)
    assert t1_bounds(generate("triangle_tube", 3, 4)) == (2, 2)


@pytest.mark.parametrize(
    "graph, value",
    [
        (generate("octahedron"), 1),
        (CUBE, 2),
        (generate("square_lattice", 2, 4), 3),
        (generate("square_tube", 4, 5), 3),
        (generate("triangle_tube", 2, 4), 1),
        (generate("tetrahedron"), 2),
    ],
)
def test_t1_values(graph, value):  # [PAPER] results table
    res = search_optimum(graph, "T", 1)
    assert res.exact and res.value == value
    lo, hi = t1_bounds(graph)
    assert lo <= value <= hi
    assert check_scenario(res.witness_pot, graph, 1).status == HOLDS
    # a single bond type always suffices in scenario 1
    assert len(res.witness_pot.symbols) == 1
    assert check_scenario(collapse_bonds(res.witness_pot), graph, 1).status == HOLDS


def test_three_row_square_tube_needs_only_two_tiles():  # [DERIVED]
    g = generate("square_tube", 3, 5)
    res = search_optimum(g, "T", 1)
    assert res.exact and res.value == 2
    assert find_realization(parse_pot("a,a,a,^a ; a,^a,^a"), g) is not None


def test_search_monotone_in_scenario():
    g = generate("square_lattice", 2, 3)
    values = {}
    for q in ("T", "B"):
        for s in (1, 2, 3):
            res = search_optimum(g, q, s)
            assert res.exact
            values[q, s] = res.value
    assert values["T", 1] <= values["T", 2] <= values["T", 3]
    assert values["B", 1] <= values["B", 2] <= values["B", 3]
    assert (values["B", 2], values["T", 2], values["B", 3], values["T", 3]) == (2, 4, 3, 4)  # [PAPER] remark


def test_search_strategies_agree():
    g = generate("tetrahedron")
    a = search_optimum(g, "T", 2, strategy="designs")
    b = search_optimum(g, "T", 2, strategy="pots")
    assert a.value == b.value == 2


def test_search_tetrahedron_scenario_three():  # [PAPER]
    assert search_optimum(generate("tetrahedron"), "B", 3, max_tiles=4).value == 3
    assert search_optimum(generate("tetrahedron"), "T", 3).value == 4


def test_search_limits_give_inexact_answer():
    # with one bond type no pot meets scenario 3 for the cube, so the answer stays open
    res = search_optimum(CUBE, "B", 3, max_bonds=1)
    assert res.upper is None
    assert not res.exact


def test_search_budget_exhaustion_is_reported():
    res = search_optimum(CUBE, "T", 3, budget=50)
    assert res.explored["budget_exhausted"]
    assert not res.exact


def test_search_rejects_isolated_vertices():
    from tilepot import MultiGraph

    with pytest.raises(DegenerateInputError):
        search_optimum(MultiGraph(2, [(0, 0)]), "T", 1)
