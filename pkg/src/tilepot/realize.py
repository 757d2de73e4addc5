"""Assembly designs, realization search and enumeration of realizable graphs."""

from __future__ import annotations

import os
import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import BudgetExhausted, InvalidDesignError, MalformedDesignError
from .graph import MultiGraph, canonical_key
from .pot import CohesiveEnd, Pot, Tile, net_count
from .spectrum import iter_count_vectors

DEFAULT_BUDGET = 10**8

# Deep graphs recurse once per vertex and once per neighbour group.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


def default_budget() -> int:
    """Node budget for exponential searches; ``TILEPOT_BUDGET`` overrides it."""
    raw = os.environ.get("TILEPOT_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit):
        self.limit = default_budget() if limit is None else limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise BudgetExhausted(f"search budget of {self.limit} nodes exhausted", self.used)


# --------------------------------------------------------------------------
# designs


class AssemblyDesign:
    """Labels on the half-edges of a graph, keyed by ``(edge_index, side)``."""

    __slots__ = ("graph", "labels")

    def __init__(self, graph: MultiGraph, labels: dict):
        self.graph = graph
        self.labels = {
            k: (v if isinstance(v, CohesiveEnd) else CohesiveEnd.parse(v)) for k, v in labels.items()
        }

    @classmethod
    def from_edge_labels(cls, graph: MultiGraph, triples) -> AssemblyDesign:
        """Build from ``(edge, symbol, oriented_from)`` triples, where
        ``oriented_from`` is the endpoint carrying the unhatted end."""
        labels = {}
        for e, sym, src in triples:
            u, v = graph.edges[e]
            if src not in (u, v):
                raise MalformedDesignError(f"edge {e} does not touch vertex {src}")
            side = 0 if src == u else 1
            labels[(e, side)] = CohesiveEnd(sym, False)
            labels[(e, 1 - side)] = CohesiveEnd(sym, True)
        return cls(graph, labels)

    def check_shape(self):
        expected = {(i, s) for i in range(len(self.graph.edges)) for s in (0, 1)}
        got = set(self.labels)
        if got != expected:
            missing = sorted(expected - got)[:3]
            extra = sorted(got - expected)[:3]
            raise MalformedDesignError(f"half-edge labels do not match the graph (missing {missing}, extra {extra})")

    def complementary(self) -> bool:
        return all(
            self.labels[(i, 0)] == self.labels[(i, 1)].complement() for i in range(len(self.graph.edges))
        )

    def vertex_tile(self, v: int) -> Tile:
        return Tile(self.labels[h] for h in self.graph.incident[v])

    def edge_labels(self) -> list[tuple[int, str, int]]:
        out = []
        for i, (u, v) in enumerate(self.graph.edges):
            a = self.labels[(i, 0)]
            out.append((i, a.symbol, v if a.hatted else u))
        return out

    def to_json(self) -> list:
        return [list(t) for t in self.edge_labels()]


def verify_design(graph: MultiGraph, design: AssemblyDesign, pot: Pot) -> bool:
    design.check_shape()
    if not design.complementary():
        return False
    return all(graph.degree(v) > 0 and design.vertex_tile(v) in pot for v in range(graph.n))


def assembling_pot(graph: MultiGraph, design: AssemblyDesign) -> Pot:
    design.check_shape()
    if not design.complementary():
        raise InvalidDesignError("some edge carries non-complementary labels")
    if any(graph.degree(v) == 0 for v in range(graph.n)):
        raise InvalidDesignError("isolated vertices have no tile")
    return Pot(design.vertex_tile(v) for v in range(graph.n))


@dataclass
class RealizationCertificate:
    graph: MultiGraph
    pot: Pot
    tile_of: tuple[int, ...]
    design: AssemblyDesign
    counts: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        c = [0] * len(self.pot)
        for t in self.tile_of:
            c[t] += 1
        self.counts = tuple(c)

    @property
    def tiles(self) -> list[Tile]:
        return [self.pot.tiles[t] for t in self.tile_of]

    def is_valid(self) -> bool:
        return verify_design(self.graph, self.design, self.pot) and all(
            self.design.vertex_tile(v) == self.pot.tiles[t] for v, t in enumerate(self.tile_of)
        )

    def balanced(self) -> bool:
        return all(
            sum(net_count(t, s) * c for t, c in zip(self.pot.tiles, self.counts)) == 0
            for s in self.pot.symbols
        )

    def to_json(self) -> dict:
        return {"tiles": list(self.tile_of), "edge_labels": self.design.to_json()}

    @classmethod
    def from_json(cls, data: dict, graph: MultiGraph, pot: Pot) -> RealizationCertificate:
        design = AssemblyDesign.from_edge_labels(graph, [tuple(x) for x in data["edge_labels"]])
        return cls(graph, pot, tuple(data["tiles"]), design)


def swap_far_ends(graph: MultiGraph, e1: int, e2: int, shared: int) -> MultiGraph:
    """Exchange the far endpoints of two edges that meet at ``shared``."""
    edges = list(graph.edges)
    (a1, b1), (a2, b2) = edges[e1], edges[e2]
    f1 = b1 if a1 == shared else a1
    f2 = b2 if a2 == shared else a2
    edges[e1], edges[e2] = (shared, f2), (shared, f1)
    return MultiGraph(graph.n, edges)


# --------------------------------------------------------------------------
# realization search


def _encode(pot: Pot):
    sid = {s: i for i, s in enumerate(pot.symbols)}
    vecs = []
    for t in pot.tiles:
        v = [0] * (2 * len(sid))
        for e in t.ends:
            v[2 * sid[e.symbol] + e.hatted] += 1
        vecs.append(tuple(v))
    return pot.symbols, vecs


def _vertex_order(g: MultiGraph) -> list[int]:
    """Greedy order: next vertex is the one with most edges into the placed set."""
    placed = [False] * g.n
    into = [0] * g.n
    order = []
    for _ in range(g.n):
        best = max((v for v in range(g.n) if not placed[v]), key=lambda v: (into[v], g.degree(v), -v))
        placed[best] = True
        order.append(best)
        for w, m in g.neighbors[best].items():
            into[w] += m
    return order


def _count_vectors_by_degree(vecs, degs: Counter, arity, limit, max_vectors=None):
    """Balanced count vectors whose arities match the degree histogram.

    Depth-first search over tile counts with interval propagation on the
    balance and degree equations. Returns None if the search exceeds
    ``limit`` nodes or finds more than ``max_vectors`` vectors.
    """
    p = len(vecs)
    nsym = len(vecs[0]) // 2
    if any(not any(arity[t] == d for t in range(p)) for d in degs):
        return []
    # rows are (coefficient pairs, rhs)
    rows = []
    for d, k in degs.items():
        rows.append(([(t, 1) for t in range(p) if arity[t] == d], k))
    for s in range(nsym):
        row = [(t, vecs[t][2 * s] - vecs[t][2 * s + 1]) for t in range(p)]
        row = [(t, c) for t, c in row if c]
        if row:
            rows.append((row, 0))
    rows_of = [[] for _ in range(p)]
    for r, (row, _) in enumerate(rows):
        for t, _c in row:
            rows_of[t].append(r)
    lo0 = [0] * p
    hi0 = [degs.get(arity[t], 0) for t in range(p)]

    def propagate(lo, hi, queue):
        pending = set(queue)
        while pending:
            r = pending.pop()
            row, rhs = rows[r]
            smin = sum(c * (lo[t] if c > 0 else hi[t]) for t, c in row)
            smax = sum(c * (hi[t] if c > 0 else lo[t]) for t, c in row)
            if smin > rhs or smax < rhs:
                return False
            for t, c in row:
                if c > 0:
                    omin, omax = smin - c * lo[t], smax - c * hi[t]
                    nlo, nhi = -((omax - rhs) // c), (rhs - omin) // c
                else:
                    omin, omax = smin - c * hi[t], smax - c * lo[t]
                    nlo, nhi = -((rhs - omin) // -c), (omax - rhs) // -c
                if nlo > lo[t] or nhi < hi[t]:
                    nlo, nhi = max(nlo, lo[t]), min(nhi, hi[t])
                    if nlo > nhi:
                        return False
                    lo[t], hi[t] = nlo, nhi
                    pending.update(rows_of[t])
        return True

    out = []
    steps = [0]

    class _Stop(Exception):
        pass

    def search(lo, hi):
        steps[0] += 1
        if steps[0] > limit:
            raise _Stop
        open_ = [t for t in range(p) if lo[t] < hi[t]]
        if not open_:
            out.append(tuple(lo))
            if max_vectors is not None and len(out) > max_vectors:
                raise _Stop
            return
        t = min(open_, key=lambda u: (hi[u] - lo[u], u))
        for k in range(lo[t], hi[t] + 1):
            nlo, nhi = list(lo), list(hi)
            nlo[t] = nhi[t] = k
            if propagate(nlo, nhi, rows_of[t]):
                search(nlo, nhi)

    lo, hi = list(lo0), list(hi0)
    if not propagate(lo, hi, range(len(rows))):
        return []
    try:
        search(lo, hi)
    except _Stop:
        return None
    return out


class _Realizer:
    def __init__(self, pot: Pot, g: MultiGraph, budget: _Budget):
        self.pot, self.g, self.budget = pot, g, budget
        self.symbols, self.vecs = _encode(pot)
        self.width = len(self.vecs[0])
        self.arity = [t.arity for t in pot.tiles]
        self.by_deg: dict[int, list[int]] = {}
        for v in range(g.n):
            d = g.degree(v)
            self.by_deg.setdefault(d, [t for t in range(len(pot)) if self.arity[t] == d])
        self.order = _vertex_order(g)
        pos = {v: i for i, v in enumerate(self.order)}
        self.loops_at = [[] for _ in range(g.n)]
        self.groups = [[] for _ in range(g.n)]
        later: list[dict] = [dict() for _ in range(g.n)]
        for e, (u, v) in enumerate(g.edges):
            if u == v:
                self.loops_at[u].append(e)
                continue
            a, b = (u, v) if pos[u] < pos[v] else (v, u)
            side_a = 0 if a == u else 1
            later[a].setdefault(b, []).append((e, side_a))
        for v in range(g.n):
            self.groups[v] = sorted(later[v].items(), key=lambda kv: pos[kv[0]])
        self.det = [[0] * self.width for _ in range(g.n)]
        self.label = {}
        self.tile_of = [None] * g.n
        self.left = None

    def run(self) -> RealizationCertificate | None:
        g = self.g
        if g.n == 0 or any(g.degree(v) == 0 for v in range(g.n)):
            return None
        if any(not ts for ts in self.by_deg.values()):
            return None
        degs = Counter(g.degree(v) for v in range(g.n))
        vectors = _count_vectors_by_degree(self.vecs, degs, self.arity, limit=200_000, max_vectors=64)
        if vectors is not None and not vectors:
            return None
        if vectors is not None and len(vectors) <= 64:
            for R in vectors:
                self.left = list(R)
                if self._search(0):
                    return self._certificate()
            return None
        self.left = None
        if self._search(0):
            return self._certificate()
        return None

    def _certificate(self):
        labels = {}
        for (e, side), x in self.label.items():
            end = CohesiveEnd(self.symbols[x >> 1], bool(x & 1))
            labels[(e, side)] = end
        return RealizationCertificate(self.g, self.pot, tuple(self.tile_of), AssemblyDesign(self.g, labels))

    def _fits(self, w) -> bool:
        dw = self.det[w]
        left = self.left
        for t in self.by_deg[self.g.degree(w)]:
            if left is not None and left[t] == 0:
                continue
            vec = self.vecs[t]
            if all(a <= b for a, b in zip(dw, vec)):
                return True
        return False

    def _search(self, i) -> bool:
        self.budget.tick()
        if i == len(self.order):
            return True
        v = self.order[i]
        dv = self.det[v]
        for t in self.by_deg[self.g.degree(v)]:
            if self.left is not None:
                if self.left[t] == 0:
                    continue
                self.left[t] -= 1
            vec = self.vecs[t]
            rem = [a - b for a, b in zip(vec, dv)]
            if min(rem) >= 0:
                self.tile_of[v] = t
                if self._loops(v, rem, i, 0, 0):
                    return True
                self.tile_of[v] = None
            if self.left is not None:
                self.left[t] += 1
        return False

    def _loops(self, v, rem, i, li, smin) -> bool:
        loops = self.loops_at[v]
        if li == len(loops):
            return self._groups(v, rem, i, 0)
        e = loops[li]
        for s in range(smin, self.width // 2):
            x, y = 2 * s, 2 * s + 1
            if rem[x] and rem[y]:
                rem[x] -= 1
                rem[y] -= 1
                self.label[(e, 0)] = x
                self.label[(e, 1)] = y
                if self._loops(v, rem, i, li + 1, s):
                    return True
                del self.label[(e, 0)], self.label[(e, 1)]
                rem[x] += 1
                rem[y] += 1
        return False

    def _groups(self, v, rem, i, gi) -> bool:
        groups = self.groups[v]
        if gi == len(groups):
            return self._search(i + 1)
        w, hes = groups[gi]
        dw = self.det[w]
        for sub in _submultisets(rem, len(hes)):
            self.budget.tick()
            for (e, side), x in zip(hes, sub):
                self.label[(e, side)] = x
                self.label[(e, 1 - side)] = x ^ 1
                rem[x] -= 1
                dw[x ^ 1] += 1
            if self._fits(w) and self._groups(v, rem, i, gi + 1):
                return True
            for (e, side), x in zip(hes, sub):
                del self.label[(e, side)], self.label[(e, 1 - side)]
                rem[x] += 1
                dw[x ^ 1] -= 1
        return False


def _submultisets(counts: list[int], k: int) -> Iterator[list[int]]:
    """Sorted index lists drawing ``k`` items from a count vector (a snapshot is taken)."""
    avail = list(counts)
    n = len(avail)
    out: list[int] = []

    def rec(start, k):
        if k == 0:
            yield list(out)
            return
        for x in range(start, n):
            if avail[x]:
                avail[x] -= 1
                out.append(x)
                yield from rec(x, k - 1)
                out.pop()
                avail[x] += 1

    return rec(0, k)


def find_realization(pot: Pot, graph: MultiGraph, budget: int | None = None) -> RealizationCertificate | None:
    """A certificate that ``pot`` realizes ``graph``, or None if none exists.

    Raises ``BudgetExhausted`` when the node budget runs out first.
    """
    return _Realizer(pot, graph, _Budget(budget)).run()


# --------------------------------------------------------------------------
# enumeration of realizable graphs


def _tables(rows: list[int], cols: list[int], budget: _Budget) -> Iterator[list[list[int]]]:
    """Nonnegative integer matrices with the given row and column sums."""
    r, c = len(rows), len(cols)
    cap = list(cols)
    mat = [[0] * c for _ in range(r)]

    def fill_row(i):
        if i == r:
            yield mat
            return
        yield from place(i, 0, rows[i])

    def place(i, j, left):
        budget.tick()
        if j == c - 1:
            if left <= cap[j]:
                mat[i][j] = left
                cap[j] -= left
                yield from fill_row(i + 1)
                cap[j] += left
                mat[i][j] = 0
            return
        tail = sum(cap[j + 1:])
        for k in range(max(0, left - tail), min(left, cap[j]) + 1):
            mat[i][j] = k
            cap[j] -= k
            yield from place(i, j + 1, left - k)
            cap[j] += k
        mat[i][j] = 0

    if r == 0 or c == 0:
        if sum(rows) == 0 and sum(cols) == 0:
            yield mat
        return
    yield from fill_row(0)


@dataclass
class Realized:
    """One isomorphism class found by enumeration."""

    graph: MultiGraph
    certificate: RealizationCertificate
    key: tuple


def _graphs_for_counts(pot: Pot, counts: Sequence[int], budget: _Budget):
    tile_of = [t for t, c in enumerate(counts) for _ in range(c)]
    n = len(tile_of)
    per_symbol = []
    for s in pot.symbols:
        un = [(v, sum(1 for e in pot.tiles[t].ends if e.symbol == s and not e.hatted)) for v, t in enumerate(tile_of)]
        hat = [(v, sum(1 for e in pot.tiles[t].ends if e.symbol == s and e.hatted)) for v, t in enumerate(tile_of)]
        un = [x for x in un if x[1]]
        hat = [x for x in hat if x[1]]
        per_symbol.append((s, un, hat))

    edges: list[tuple[int, int, str]] = []

    def rec(si):
        if si == len(per_symbol):
            yield list(edges)
            return
        s, un, hat = per_symbol[si]
        for mat in _tables([m for _, m in un], [m for _, m in hat], budget):
            mark = len(edges)
            for i, (u, _) in enumerate(un):
                for j, (v, _) in enumerate(hat):
                    edges.extend([(u, v, s)] * mat[i][j])
            yield from rec(si + 1)
            del edges[mark:]

    for labeled in rec(0):
        graph_edges = []
        labels = {}
        for idx, (u, v, s) in enumerate(labeled):
            graph_edges.append((u, v))
            su = 0 if u <= v else 1
            labels[(idx, su)] = CohesiveEnd(s, False)
            labels[(idx, 1 - su)] = CohesiveEnd(s, True)
        g = MultiGraph(n, graph_edges)
        yield g, RealizationCertificate(g, pot, tuple(tile_of), AssemblyDesign(g, labels))


def iter_realizable(
    pot: Pot,
    n: int,
    connected_only: bool = True,
    counts: Sequence[int] | None = None,
    budget: int | None = None,
    explored: list | None = None,
) -> Iterator[Realized]:
    """Yield each new isomorphism class of order-``n`` graphs realized by ``pot``.

    Completed count vectors are appended to ``explored`` when given.
    """
    if n < 1:
        raise ValueError("order must be positive")
    b = _Budget(budget)
    vectors = [tuple(counts)] if counts is not None else iter_count_vectors(pot, n)
    seen: set = set()
    for R in vectors:
        if sum(R) != n:
            raise ValueError("counts must sum to the order")
        for g, cert in _graphs_for_counts(pot, R, b):
            if connected_only and not g.is_connected():
                continue
            key = canonical_key(g)
            if key in seen:
                continue
            seen.add(key)
            yield Realized(g, cert, key)
        if explored is not None:
            explored.append(tuple(R))


def enumerate_realizable(
    pot: Pot,
    n: int,
    connected_only: bool = True,
    counts: Sequence[int] | None = None,
    budget: int | None = None,
) -> list[Realized]:
    """All order-``n`` graphs realized by ``pot``, one per isomorphism class,
    sorted by canonical key. ``counts`` restricts to one count vector.

    On budget exhaustion, ``BudgetExhausted.partial`` holds the classes found
    and ``explored`` the count vectors that were completed.
    """
    found: list[Realized] = []
    explored: list = []
    try:
        for r in iter_realizable(pot, n, connected_only, counts, budget, explored):
            found.append(r)
    except BudgetExhausted as exc:
        found.sort(key=lambda r: r.key)
        raise BudgetExhausted(str(exc), exc.nodes, partial=found, explored=explored) from None
    found.sort(key=lambda r: r.key)
    return found
