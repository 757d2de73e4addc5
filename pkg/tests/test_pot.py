import json

import pytest
from hypothesis import given, settings, strategies as st

from tilepot import ClosureError, CohesiveEnd, Pot, PotSyntaxError, Tile, collapse_bonds, load_pot, net_count, parse_pot, render_pot
from tilepot.pot import pot_from_json


def test_end_complement_and_parse():  # [TRIVIAL]
    a = CohesiveEnd("a")
    assert a.complement() == CohesiveEnd("a", True)
    assert a.complement().complement() == a
    assert CohesiveEnd.parse("^b") == CohesiveEnd("b", True)
    assert str(CohesiveEnd("b", True)) == "^b"


def test_invalid_symbol_rejected():
    with pytest.raises(ValueError):
        CohesiveEnd("a b")


def test_tile_is_a_multiset():  # [TRIVIAL]
    assert Tile(["a", "^a", "a"]) == Tile(["^a", "a", "a"])
    t = Tile(["a", "a", "^a"])
    assert t.arity == 3
    assert t.pretty() == "{a^2, ^a}"
    assert str(t) == "a,a,^a"


def test_empty_tile_rejected():
    with pytest.raises(ValueError):
        Tile([])


def test_parse_render_round_trip():  # [TRIVIAL]
    text = "a,a,^a ; ^a,^a,^a"
    p = parse_pot(text)
    assert len(p) == 2
    assert render_pot(p) == text
    assert parse_pot(render_pot(p)) == p


def test_pot_is_a_set():
    p = parse_pot("a,^a ; ^a,a ; a,a,^a,^a")
    assert len(p) == 2
    assert parse_pot("a,a,^a,^a ; a,^a") == p


def test_closure_error_names_missing_end():
    with pytest.raises(ClosureError) as info:
        parse_pot("a,a,b ; ^a")
    assert info.value.symbol == "b"
    assert info.value.missing == "^b"


def test_closure_is_per_polarity():
    # a hatted end alone is not closed
    with pytest.raises(ClosureError):
        parse_pot("^a,^a")


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("a,,b", 1, 3),
        ("a,b ;", 1, 6),
        ("a ; ^a\n; a#", 2, 4),
        ("", 1, 1),
    ],
)
def test_syntax_errors_report_position(text, line, col):
    with pytest.raises(PotSyntaxError) as info:
        parse_pot(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_net_count():  # [TRIVIAL]
    t = Tile(["a", "a", "^a", "^b"])
    assert net_count(t, "a") == 1
    assert net_count(t, "b") == -1
    assert net_count(t, "c") == 0


def test_collapse_bonds_keeps_polarity():
    p = parse_pot("a,b,b ; a,a,^b ; a,^a,^a")
    q = collapse_bonds(p)
    assert q.symbols == ["a"]
    assert q == parse_pot("a,a,a ; a,a,^a ; a,^a,^a")


def test_collapse_can_merge_tiles():
    p = parse_pot("a,^b ; b,^a")
    assert len(collapse_bonds(p)) == 1


def test_json_round_trip(tmp_path):
    p = parse_pot("a,b,b ; a,a,^b ; a,^a,^a")
    data = json.loads(json.dumps(p.to_json()))
    assert pot_from_json(data) == p
    f = tmp_path / "p.json"
    f.write_text(json.dumps(data))
    assert load_pot(f) == p
    g = tmp_path / "p.pot"
    g.write_text(render_pot(p) + "\n")
    assert load_pot(g) == p


_end = st.builds(CohesiveEnd, st.sampled_from("abc"), st.booleans())
_tile = st.lists(_end, min_size=1, max_size=4).map(Tile)


@settings(derandomize=True, max_examples=150)
@given(st.lists(_tile, min_size=1, max_size=5))
def test_closed_pots_round_trip(tiles):
    # close the pot by adding a tile of all complements
    comp = Tile(e.complement() for t in tiles for e in t)
    p = Pot(tiles + [comp])
    assert parse_pot(render_pot(p)) == p
    assert pot_from_json(p.to_json()) == p
    assert set(p.symbols) == {e.symbol for t in p for e in t}
