"""Cohesive ends, tiles and pots.

A tile is a multiset of cohesive ends and a pot is a set of distinct
tiles in which every cohesive end has its complement somewhere. The
plain-text form writes the hat as a ``^`` prefix::

    a,a,^a ; ^a,^a,^a

which is the pot {{a^2, ^a}, {^a^3}}.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ClosureError, PotSyntaxError, TilepotError

_NAME = re.compile(r"[A-Za-z0-9_]+")


@dataclass(frozen=True, order=True)
class CohesiveEnd:
    symbol: str
    hatted: bool = False

    def __post_init__(self):
        if not isinstance(self.symbol, str) or not _NAME.fullmatch(self.symbol):
            raise ValueError(f"invalid bond symbol {self.symbol!r}")

    def complement(self) -> CohesiveEnd:
        return CohesiveEnd(self.symbol, not self.hatted)

    def __str__(self):
        return ("^" if self.hatted else "") + self.symbol

    @classmethod
    def parse(cls, text: str) -> CohesiveEnd:
        text = text.strip()
        if text.startswith("^"):
            return cls(text[1:], True)
        return cls(text, False)


@dataclass(frozen=True)
class Tile:
    """Multiset of cohesive ends, stored sorted so equal tiles compare equal."""

    ends: tuple[CohesiveEnd, ...]

    def __init__(self, ends: Iterable[CohesiveEnd | str]):
        parsed = tuple(sorted(e if isinstance(e, CohesiveEnd) else CohesiveEnd.parse(e) for e in ends))
        if not parsed:
            raise ValueError("a tile needs at least one arm")
        object.__setattr__(self, "ends", parsed)

    @property
    def arity(self) -> int:
        return len(self.ends)

    @property
    def symbols(self) -> set[str]:
        return {e.symbol for e in self.ends}

    def counts(self) -> Counter:
        return Counter(self.ends)

    def __len__(self):
        return len(self.ends)

    def __iter__(self):
        return iter(self.ends)

    def __str__(self):
        return ",".join(str(e) for e in self.ends)

    def pretty(self) -> str:
        """Exponent notation, e.g. ``{a^2, ^a}``."""
        parts = []
        for end, k in sorted(self.counts().items()):
            parts.append(str(end) if k == 1 else f"{end}^{k}")
        return "{" + ", ".join(parts) + "}"


class Pot:
    """An ordered collection of distinct tiles satisfying closure.

    Duplicate tiles are merged (first occurrence wins the position).
    Equality ignores tile order: a pot is a set of tiles.
    """

    __slots__ = ("tiles", "_index")

    def __init__(self, tiles: Iterable[Tile | Iterable[str]], check_closure: bool = True):
        seen: dict[Tile, int] = {}
        for t in tiles:
            tile = t if isinstance(t, Tile) else Tile(t)
            if tile not in seen:
                seen[tile] = len(seen)
        if not seen:
            raise ValueError("a pot needs at least one tile")
        self.tiles: tuple[Tile, ...] = tuple(seen)
        self._index = seen
        if check_closure:
            _check_closure(self.tiles)

    @property
    def symbols(self) -> list[str]:
        """Sigma(P) in canonical (ascending) order."""
        return sorted(set().union(*(t.symbols for t in self.tiles)))

    def index(self, tile: Tile) -> int:
        return self._index[tile]

    def __contains__(self, tile):
        return tile in self._index

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def __getitem__(self, i):
        return self.tiles[i]

    def __eq__(self, other):
        if not isinstance(other, Pot):
            return NotImplemented
        return set(self.tiles) == set(other.tiles)

    def __hash__(self):
        return hash(frozenset(self.tiles))

    def __repr__(self):
        return f"Pot({render_pot(self)!r})"

    def pretty(self) -> str:
        return "{" + ", ".join(t.pretty() for t in self.tiles) + "}"

    def to_json(self) -> dict:
        return {"tiles": [[str(e) for e in t] for t in self.tiles]}


def _check_closure(tiles: Sequence[Tile]) -> None:
    present = {e for t in tiles for e in t}
    for end in sorted(present):
        if end.complement() not in present:
            raise ClosureError(end.symbol, str(end.complement()))


def render_pot(pot: Pot) -> str:
    return " ; ".join(str(t) for t in pot.tiles)


def parse_pot(text: str) -> Pot:
    """Parse the ``a,a,^a ; ^a,^a,^a`` text form (whitespace and newlines are free)."""
    tiles: list[list[CohesiveEnd]] = []
    current: list[CohesiveEnd] = []
    expect_end = True
    line, col = 1, 1
    i = 0
    n = len(text)

    def fail(msg):
        raise PotSyntaxError(msg, line, col)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if expect_end:
            hatted = False
            if ch == "^":
                hatted = True
                i += 1
                col += 1
            m = _NAME.match(text, i)
            if not m:
                fail("expected a bond symbol")
            current.append(CohesiveEnd(m.group(), hatted))
            col += m.end() - i
            i = m.end()
            expect_end = False
        elif ch == ",":
            expect_end = True
            i += 1
            col += 1
        elif ch == ";":
            tiles.append(current)
            current = []
            expect_end = True
            i += 1
            col += 1
        else:
            fail(f"unexpected character {ch!r}")
    if expect_end:
        fail("unexpected end of input, expected a bond symbol")
    tiles.append(current)
    return Pot(Tile(t) for t in tiles)


def pot_from_json(data: dict) -> Pot:
    try:
        raw = data["tiles"]
    except (KeyError, TypeError):
        raise TilepotError('pot JSON needs a "tiles" list') from None
    return Pot(Tile(CohesiveEnd.parse(e) for e in t) for t in raw)


def load_pot(path: str | Path) -> Pot:
    """Read a pot file in either the text or the JSON form."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return pot_from_json(json.loads(text))
    return parse_pot(text)


def net_count(tile: Tile, symbol: str) -> int:
    """Unhatted minus hatted occurrences of ``symbol`` on ``tile``."""
    return sum((-1 if e.hatted else 1) for e in tile.ends if e.symbol == symbol)


def collapse_bonds(pot: Pot, symbol: str | None = None) -> Pot:
    """Rename every bond symbol to one symbol, keeping polarities.

    The target defaults to the smallest symbol of the pot.
    """
    target = symbol if symbol is not None else pot.symbols[0]
    return Pot(Tile(CohesiveEnd(target, e.hatted) for e in t) for t in pot.tiles)
