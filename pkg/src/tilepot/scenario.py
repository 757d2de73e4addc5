"""Scenario checks and exhaustive searches for the fewest tiles or bond types.

Scenario 1 asks that the pot realize the target graph. Scenario 2 adds
that the spectrum admits no smaller order. Scenario 3 adds that every
connected graph of the target's order built from the pot is isomorphic
to the target.

Searches rely on one monotonicity fact: if a pot passes a scenario for G,
so does the assembling pot of any design it uses for G, which is a subset
with no more tiles and no more bond types. Minimising over assembling pots
is therefore enough.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb
from typing import Iterator

from .errors import BudgetExhausted, DegreesOfFreedomError, DegenerateInputError
from .graph import MultiGraph, isomorphic, valency_stats
from .pot import CohesiveEnd, Pot, Tile
from .realize import RealizationCertificate, _Budget, _vertex_order, find_realization, iter_realizable
from .spectrum import OrderWitness, smallest_order

HOLDS, FAILS, INDETERMINATE = "holds", "fails", "indeterminate"


@dataclass
class ScenarioReport:
    scenario: int
    status: str
    violation: dict | None = None
    certificate: RealizationCertificate | None = None
    reason: str = ""

    @property
    def holds(self) -> bool | None:
        """True or False, or None when the check could not finish."""
        if self.status == INDETERMINATE:
            return None
        return self.status == HOLDS

    def to_json(self) -> dict:
        out = {"scenario": self.scenario, "result": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.violation is not None:
            v = dict(self.violation)
            if "witness" in v:
                v["witness"] = v["witness"].to_json()
            if "graph" in v:
                v["graph"] = v["graph"].to_json()
            if "graph_certificate" in v:
                v["graph_certificate"] = v["graph_certificate"].to_json()
            out["violation"] = v
        return out


def check_scenario(
    pot: Pot,
    graph: MultiGraph,
    level: int,
    budget: int | None = None,
    fallback: bool = True,
    certificate: RealizationCertificate | None = None,
) -> ScenarioReport:
    """Decide whether ``pot`` meets scenario ``level`` for ``graph``.

    A budget overrun or an unsupported spectrum gives an indeterminate
    report, never a pass. ``fallback`` allows the bounded enumeration for
    spectra with three or more free variables. A known ``certificate`` for
    (pot, graph) skips the scenario 1 search.
    """
    if level not in (1, 2, 3):
        raise ValueError("scenario level must be 1, 2 or 3")
    if certificate is None:
        try:
            certificate = find_realization(pot, graph, budget)
        except BudgetExhausted as exc:
            return ScenarioReport(level, INDETERMINATE, reason=str(exc))
    if certificate is None:
        return ScenarioReport(level, FAILS, {"kind": "not_realized"})
    if level == 1:
        return ScenarioReport(1, HOLDS, certificate=certificate)

    n = graph.n
    try:
        small = smallest_order(pot, n - 1, fallback=fallback) if n > 1 else None
    except DegreesOfFreedomError as exc:
        return ScenarioReport(level, INDETERMINATE, certificate=certificate, reason=str(exc))
    if small is not None:
        return ScenarioReport(level, FAILS, {"kind": "smaller_order", "witness": small}, certificate)
    if level == 2:
        return ScenarioReport(2, HOLDS, certificate=certificate)

    try:
        for r in iter_realizable(pot, n, connected_only=True, budget=budget):
            if not isomorphic(r.graph, graph)[0]:
                return ScenarioReport(
                    3, FAILS,
                    {"kind": "non_isomorphic", "graph": r.graph, "graph_certificate": r.certificate},
                    certificate,
                )
    except BudgetExhausted as exc:
        return ScenarioReport(3, INDETERMINATE, certificate=certificate, reason=str(exc))
    return ScenarioReport(3, HOLDS, certificate=certificate)


def t1_bounds(graph: MultiGraph) -> tuple[int, int]:
    """Lower and upper bound on the fewest tile types realizing ``graph``:
    the number of distinct degrees, and the even-degree count plus twice
    the odd-degree count (an even degree needs one balanced tile, an odd
    degree a surplus tile and a deficit tile)."""
    st = valency_stats(graph)
    return st.av, st.ev + 2 * st.ov


# --------------------------------------------------------------------------
# pot keys and symmetry

_NAMES = "abcdefghijklmnopqrstuvwxyz"


def symbol_name(i: int) -> str:
    return _NAMES[i] if i < 26 else f"s{i}"


def _pot_from_key(key) -> Pot:
    return Pot(Tile(CohesiveEnd(symbol_name(x >> 1), bool(x & 1)) for x in t) for t in key)


def _key_from_pot(pot: Pot) -> tuple:
    sid = {s: i for i, s in enumerate(pot.symbols)}
    return tuple(sorted(tuple(sorted(2 * sid[e.symbol] + e.hatted for e in t.ends)) for t in pot.tiles))


def canonical_pot_key(key: tuple, max_symbols: int = 4) -> tuple:
    """Least image of a pot key under symbol permutations and per-symbol
    hat flips. Above ``max_symbols`` symbols the key is only normalised by
    renaming symbols in order of first appearance."""
    syms = sorted({x >> 1 for t in key for x in t})
    s = len(syms)
    if s > max_symbols:
        ren = {}
        for t in key:
            for x in t:
                ren.setdefault(x >> 1, len(ren))
        return tuple(sorted(tuple(sorted(2 * ren[x >> 1] + (x & 1) for x in t)) for t in key))
    best = None
    for perm in permutations(range(s)):
        pmap = {syms[i]: perm[i] for i in range(s)}
        for flips in product((0, 1), repeat=s):
            fmap = {syms[i]: flips[i] for i in range(s)}
            img = tuple(sorted(tuple(sorted(2 * pmap[x >> 1] + ((x & 1) ^ fmap[x >> 1]) for x in t)) for t in key))
            if best is None or img < best:
                best = img
    return best


def canonical_pot(pot: Pot) -> Pot:
    return _pot_from_key(canonical_pot_key(_key_from_pot(pot), max_symbols=8))


def _key_symbols(key) -> int:
    return len({x >> 1 for t in key for x in t})


# --------------------------------------------------------------------------
# candidate generation


def _stirling2(n, k):
    row = [1] + [0] * k
    for i in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def design_space_size(edges: int, max_bonds: int) -> int:
    """Designs up to symbol renaming and per-symbol hat flips."""
    return sum(_stirling2(edges, s) * 2 ** (edges - s) for s in range(1, min(max_bonds, edges) + 1))


def _candidate_tiles(degrees, bonds) -> list[tuple[int, ...]]:
    out = []
    for d in sorted(degrees):
        out.extend(combinations_with_replacement(range(2 * bonds), d))
    return out


def pot_space_size(degrees, max_bonds: int, max_tiles: int) -> int:
    nt = len(_candidate_tiles(degrees, max_bonds))
    return sum(comb(nt, k) for k in range(1, max_tiles + 1))


def iter_design_pots(graph: MultiGraph, max_bonds: int, max_tiles: int, budget: _Budget) -> Iterator[tuple]:
    """Keys of assembling pots over all designs with at most ``max_bonds``
    symbols and at most ``max_tiles`` distinct vertex tiles.

    Symbols are introduced in order and each new symbol's first edge has a
    fixed orientation, which removes renaming and hat-flip duplicates of
    designs (duplicate pots still occur and are left to the caller).
    """
    g = graph
    order = _vertex_order(g)
    pos = {v: i for i, v in enumerate(order)}
    eorder = sorted(range(len(g.edges)), key=lambda e: (max(pos[x] for x in g.edges[e]), min(pos[x] for x in g.edges[e]), e))
    remaining = [g.degree(v) for v in range(g.n)]
    ends: list[list[int]] = [[] for _ in range(g.n)]
    distinct: Counter = Counter()
    E = len(eorder)

    def finish(v):
        remaining[v] -= 1
        if remaining[v] == 0:
            distinct[tuple(sorted(ends[v]))] += 1
            return True
        return False

    def unfinish(v, done):
        if done:
            t = tuple(sorted(ends[v]))
            distinct[t] -= 1
            if not distinct[t]:
                del distinct[t]
        remaining[v] += 1

    def rec(i, used):
        budget.tick()
        if i == E:
            yield tuple(sorted(distinct))
            return
        u, v = g.edges[eorder[i]]
        for s in range(min(used + 1, max_bonds)):
            for o in ((0,) if s == used else (0, 1)):
                ends[u].append(2 * s + o)
                ends[v].append(2 * s + 1 - o)
                du = finish(u)
                dv = finish(v)
                if len(distinct) <= max_tiles:
                    yield from rec(i + 1, max(used, s + 1))
                unfinish(v, dv)
                unfinish(u, du)
                ends[v].pop()
                ends[u].pop()

    if any(d == 0 for d in remaining):
        return
    yield from rec(0, 0)


def iter_space_pots(degrees, max_bonds: int, k: int, budget: _Budget) -> Iterator[tuple]:
    """Keys of all closed pots with exactly ``k`` tiles whose arities all lie
    in ``degrees`` and that cover every degree."""
    tiles = _candidate_tiles(degrees, max_bonds)
    need = set(degrees)
    for combo in combinations(tiles, k):
        budget.tick()
        if {len(t) for t in combo} != need:
            continue
        present = {x for t in combo for x in t}
        if any((x ^ 1) not in present for x in present):
            continue
        yield tuple(sorted(combo))


# --------------------------------------------------------------------------
# optimum search


@dataclass
class OptimaResult:
    quantity: str
    scenario: int
    lower: int
    upper: int | None
    witness_pot: Pot | None
    strategy: str
    explored: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def value(self) -> int | tuple[int, int | None]:
        return self.upper if self.exact else (self.lower, self.upper)

    def to_json(self) -> dict:
        return {
            "quantity": self.quantity,
            "scenario": self.scenario,
            "exact": self.exact,
            "value": self.upper if self.exact else None,
            "lower": self.lower,
            "upper": self.upper,
            "witness_pot": self.witness_pot.to_json() if self.witness_pot else None,
            "strategy": self.strategy,
            "explored": self.explored,
        }


def search_optimum(
    graph: MultiGraph,
    quantity: str,
    scenario: int,
    max_tiles: int = 6,
    max_bonds: int = 4,
    budget: int | None = None,
    strategy: str = "auto",
) -> OptimaResult:
    """Smallest number of tile types (``"T"``) or bond types (``"B"``) over
    pots meeting ``scenario`` for ``graph``, within the given limits.

    Candidates are tried in order of the minimised quantity (ties by the
    other one). The answer is exact when every smaller level was searched
    completely: for tiles this needs enough bond types for a pot of that
    size (scenario 1 needs only one, as collapsing bonds keeps
    realizability); for bond types it needs ``max_tiles >= #V``.
    ``strategy`` is ``"designs"`` (assembling pots of all designs),
    ``"pots"`` (all small pots over the candidate tiles) or ``"auto"``.
    """
    quantity = quantity.upper()
    if quantity not in ("T", "B"):
        raise ValueError("quantity must be 'T' or 'B'")
    if scenario not in (1, 2, 3):
        raise ValueError("scenario must be 1, 2 or 3")
    if graph.n == 0 or any(graph.degree(v) == 0 for v in range(graph.n)):
        raise DegenerateInputError("target graph needs at least one vertex and no isolated vertices")

    degrees = sorted(set(graph.degrees()))
    dmax = max(degrees)
    bonds = 1 if (quantity == "T" and scenario == 1) else max_bonds
    tiles_cap = max_tiles

    if strategy not in ("auto", "pots", "designs"):
        raise ValueError("strategy must be 'auto', 'pots' or 'designs'")

    def level_complete(level):
        if quantity == "T":
            return bonds == 1 and scenario == 1 or bonds >= (level * dmax) // 2
        return tiles_cap >= graph.n

    b = _Budget(budget)
    checked = 0
    incomplete: set[int] = set()
    found = None
    max_level = tiles_cap if quantity == "T" else bonds
    exhausted = False
    used_strategies: dict[int, str] = {}

    def pick(level):
        if strategy != "auto":
            return strategy
        if quantity == "T":
            d_est = design_space_size(len(graph.edges), bonds)
            p_est = comb(len(_candidate_tiles(degrees, bonds)), level)
        else:
            d_est = design_space_size(len(graph.edges), level)
            p_est = pot_space_size(degrees, level, tiles_cap)
        # a pot candidate costs a realization search, a design only a labeling step
        return "pots" if p_est * 20 < d_est else "designs"

    def level_keys(level, how):
        keys = set()
        if how == "designs":
            if quantity == "T":
                source = iter_design_pots(graph, bonds, level, b)
            else:
                source = iter_design_pots(graph, level, tiles_cap, b)
            for key in source:
                if (len(key) if quantity == "T" else _key_symbols(key)) == level:
                    keys.add(canonical_pot_key(key))
        elif quantity == "T":
            for key in iter_space_pots(degrees, bonds, level, b):
                keys.add(canonical_pot_key(key))
        else:
            for k in range(1, tiles_cap + 1):
                for key in iter_space_pots(degrees, level, k, b):
                    if _key_symbols(key) == level:
                        keys.add(canonical_pot_key(key))
        other = _key_symbols if quantity == "T" else len
        return sorted(keys, key=lambda k: (other(k), k))

    try:
        for level in range(1, max_level + 1):
            how = used_strategies[level] = pick(level)
            for key in level_keys(level, how):
                checked += 1
                pot = _pot_from_key(key)
                cert = find_realization(pot, graph, b.limit) if how == "designs" else None
                if how == "designs" and cert is None:
                    raise AssertionError("assembling pot failed to realize its own graph")
                rep = check_scenario(pot, graph, scenario, budget=b.limit, certificate=cert)
                if rep.status == HOLDS:
                    found = (level, pot)
                    break
                if rep.status == INDETERMINATE:
                    incomplete.add(level)
            if found:
                break
    except BudgetExhausted:
        exhausted = True

    top = found[0] if found else max_level + 1
    lower = top
    for level in range(1, top):
        if exhausted or level in incomplete or not level_complete(level):
            lower = level
            break
    if quantity == "T" and scenario == 1:
        lower = max(lower if lower < top else top, min(t1_bounds(graph)[0], top))
    explored = {
        "strategy_by_level": {str(k): v for k, v in used_strategies.items()},
        "bond_types_searched": bonds,
        "max_tiles": tiles_cap,
        "candidates_checked": checked,
        "nodes": b.used,
        "budget_exhausted": exhausted,
        "complete_levels": [lv for lv in range(1, top) if not exhausted and lv not in incomplete and level_complete(lv)],
    }
    return OptimaResult(
        quantity, scenario, lower, found[0] if found else None, found[1] if found else None,
        strategy if strategy != "auto" else "/".join(sorted(set(used_strategies.values()))) or "none",
        explored,
    )
