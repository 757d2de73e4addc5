"""Pots that encode graph 3-colouring, plus a brute-force colouring oracle.

Bond symbols are built from (vertex, edge, colour) triples joined with
``_``, e.g. ``v2_e5_r``; the ``provenance`` map recovers the parts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .errors import DegenerateInputError
from .graph import MultiGraph
from .pot import CohesiveEnd, Pot, Tile
from .realize import AssemblyDesign

COLORS = ("r", "g", "b")


@dataclass
class ReductionArtifact:
    variant: str
    source: MultiGraph
    pot: Pot
    target_order: int
    provenance: dict = field(default_factory=dict)
    host: MultiGraph | None = None
    host_design: AssemblyDesign | None = None

    def to_json(self) -> dict:
        out = {
            "variant": self.variant,
            "target_order": self.target_order,
            "pot": self.pot.to_json(),
            "provenance": [[str(t), list(p)] for t, p in self.provenance.items()],
        }
        if self.host is not None:
            out["host"] = self.host.to_json()
        return out


def _triple(v, e, c) -> str:
    return f"v{v}_e{e}_{c}"


def _need_simple_connected(g: MultiGraph):
    if not g.is_simple():
        raise DegenerateInputError("source graph must be simple")
    if g.n == 0 or not g.edges:
        raise DegenerateInputError("source graph needs at least one edge")
    if not g.is_connected():
        raise DegenerateInputError("source graph must be connected")


def _vertex_arms(g: MultiGraph, v: int, c: str) -> list[CohesiveEnd]:
    return [CohesiveEnd(_triple(v, e, c)) for e, _ in g.incident[v]]


def _edge_tiles(g: MultiGraph, prov: dict) -> list[Tile]:
    out = []
    for e, (u, v) in enumerate(g.edges):
        for cu, cv in permutations(COLORS, 2):
            t = Tile([CohesiveEnd(_triple(u, e, cu), True), CohesiveEnd(_triple(v, e, cv), True)])
            prov[t] = ("edge", e, cu + cv)
            out.append(t)
    return out


def prp_pot(graph: MultiGraph) -> ReductionArtifact:
    """Three vertex tiles per vertex (one per colour, one arm per incident
    edge) and six two-armed tiles per edge (every ordered pair of distinct
    colours). The pot realizes the subdivision of ``graph`` exactly when
    ``graph`` is 3-colourable."""
    _need_simple_connected(graph)
    prov: dict = {}
    tiles = []
    for v in range(graph.n):
        for c in COLORS:
            t = Tile(_vertex_arms(graph, v, c))
            prov[t] = ("vertex", v, c)
            tiles.append(t)
    tiles += _edge_tiles(graph, prov)
    return ReductionArtifact("prp", graph, Pot(tiles), graph.n + len(graph.edges), prov)


def _pair(v, c1, c2) -> str:
    a, b = sorted((c1, c2))
    return f"v{v}_{a}{b}"


def _srp_vertex_tile(g: MultiGraph, v: int, c: str) -> Tile:
    arms = _vertex_arms(g, v, c)
    for c2 in COLORS:
        s = _pair(v, c, c2)
        arms += [CohesiveEnd(s), CohesiveEnd(s, True)]
    return Tile(arms)


def srp_pot(graph: MultiGraph) -> ReductionArtifact:
    """Assembling pot of a host graph built from a 4-regular ``graph``.

    The host has, per source vertex and colour, two ten-armed vertices
    (joined to each other and to the other colours' copies through the
    self-complementary arms) and, per source edge, six subdivision vertices,
    one for each ordered colour pair. That is 18k vertices for k source vertices;
    each colour tile needs two copies because each edge has two subdivision
    tiles per endpoint colour. The target order is 3k.
    """
    _need_simple_connected(graph)
    if any(graph.degree(v) != 4 for v in range(graph.n)):
        raise DegenerateInputError("source graph must be 4-regular")
    k = graph.n
    prov: dict = {}
    vid = {}
    for v in range(k):
        for c in COLORS:
            for copy in (0, 1):
                vid[(v, c, copy)] = len(vid)
    edges: list[tuple[int, int]] = []
    labels: dict = {}

    def add_edge(a, b, end_a: CohesiveEnd):
        i = len(edges)
        edges.append((a, b))
        sa = 0 if a <= b else 1
        labels[(i, sa)] = end_a
        labels[(i, 1 - sa)] = end_a.complement()

    # blow-up of v: the self-complementary arm pairs join its six vertices,
    # same-colour copies through the cc pair and equal copy numbers through
    # the mixed pairs, one edge in each direction
    for v in range(k):
        for c in COLORS:
            a, b = vid[(v, c, 0)], vid[(v, c, 1)]
            add_edge(a, b, CohesiveEnd(_pair(v, c, c)))
            add_edge(b, a, CohesiveEnd(_pair(v, c, c)))
        for c1, c2 in (("r", "g"), ("r", "b"), ("g", "b")):
            for copy in (0, 1):
                a, b = vid[(v, c1, copy)], vid[(v, c2, copy)]
                add_edge(a, b, CohesiveEnd(_pair(v, c1, c2)))
                add_edge(b, a, CohesiveEnd(_pair(v, c1, c2)))
    n_host = len(vid)
    used = {key: 0 for key in [(v, e, c) for e in range(len(graph.edges)) for v in graph.edges[e] for c in COLORS]}
    for e, (u, w) in enumerate(graph.edges):
        for cu, cw in permutations(COLORS, 2):
            mid = n_host
            n_host += 1
            for end, c in ((u, cu), (w, cw)):
                copy = used[(end, e, c)]
                used[(end, e, c)] += 1
                add_edge(vid[(end, c, copy)], mid, CohesiveEnd(_triple(end, e, c)))
    host = MultiGraph(n_host, edges)
    design = AssemblyDesign(host, labels)

    tiles = []
    for v in range(k):
        for c in COLORS:
            t = _srp_vertex_tile(graph, v, c)
            prov[t] = ("vertex", v, c)
            tiles.append(t)
    tiles += _edge_tiles(graph, prov)
    return ReductionArtifact("srp", graph, Pot(tiles), 3 * k, prov, host, design)


def subdivided_target(graph: MultiGraph, variant: str) -> MultiGraph:
    """Subdivide every edge (new vertex ``n + e`` on edge ``e``). The srp
    variant also puts three loops on every original vertex."""
    if variant not in ("prp", "srp"):
        raise ValueError("variant must be 'prp' or 'srp'")
    _need_simple_connected(graph)
    if variant == "srp" and any(graph.degree(v) != 4 for v in range(graph.n)):
        raise DegenerateInputError("source graph must be 4-regular")
    n = graph.n
    edges = []
    for e, (u, v) in enumerate(graph.edges):
        edges += [(u, n + e), (v, n + e)]
    if variant == "srp":
        edges += [(v, v) for v in range(n) for _ in range(3)]
    return MultiGraph(n + len(graph.edges), edges)


def three_colorable(graph: MultiGraph) -> list[int] | None:
    """A proper colouring with colours 0..2, or None."""
    if any(u == v for u, v in graph.edges):
        return None
    order = sorted(range(graph.n), key=lambda v: -graph.degree(v))
    color = [-1] * graph.n

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        banned = {color[w] for w in graph.neighbors[v]}
        # symmetry: the first vertex only needs colour 0
        for c in range(1 if i == 0 else 3):
            if c not in banned:
                color[v] = c
                if rec(i + 1):
                    return True
        color[v] = -1
        return False

    return list(color) if rec(0) else None
