"""Multigraphs with loops and parallel edges, the graph families used as
assembly targets, and isomorphism testing by canonical labeling.

Edges are unordered vertex pairs stored as ``(u, v)`` with ``u <= v``.
Parallel edges are repeated entries; a loop is ``(v, v)`` and owns two
half-edges at ``v``. A half-edge is addressed as ``(edge_index, side)``
where side 0 sits at ``edges[i][0]`` and side 1 at ``edges[i][1]``, so
the two half-edges of a loop stay distinguishable.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .errors import DegenerateInputError, TilepotError


class MultiGraph:
    __slots__ = ("n", "edges", "__dict__")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]] = ()):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        norm = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {vertex_count} vertices")
            norm.append((u, v) if u <= v else (v, u))
        self.n = vertex_count
        self.edges: tuple[tuple[int, int], ...] = tuple(norm)

    def __repr__(self):
        return f"MultiGraph({self.n}, {list(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> list[Counter]:
        """Per vertex, a Counter of non-loop neighbours and their multiplicity."""
        adj = [Counter() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                adj[u][v] += 1
                adj[v][u] += 1
        return adj

    @cached_property
    def loops(self) -> list[int]:
        out = [0] * self.n
        for u, v in self.edges:
            if u == v:
                out[u] += 1
        return out

    @cached_property
    def incident(self) -> list[list[tuple[int, int]]]:
        """Per vertex, its half-edges as ``(edge_index, side)``."""
        inc = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append((i, 0))
            inc[v].append((i, 1))
        return inc

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def degrees(self) -> list[int]:
        return [len(h) for h in self.incident]

    def half_edges(self) -> list[tuple[int, int, int]]:
        """All half-edges as ``(vertex, edge_index, side)``."""
        return [(e[side], i, side) for i, e in enumerate(self.edges) for side in (0, 1)]

    def is_simple(self) -> bool:
        return all(u != v for u, v in self.edges) and len(set(self.edges)) == len(self.edges)

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components; loops never connect anything."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.neighbors[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def subgraph(self, vertices: list[int]) -> MultiGraph:
        pos = {v: i for i, v in enumerate(vertices)}
        return MultiGraph(
            len(vertices), [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        )

    def relabel(self, mapping: list[int]) -> MultiGraph:
        """Graph with vertex ``v`` renamed ``mapping[v]``; edge order is kept."""
        return MultiGraph(self.n, [(mapping[u], mapping[v]) for u, v in self.edges])

    def to_json(self) -> dict:
        return {"vertices": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> MultiGraph:
        try:
            return cls(int(data["vertices"]), [tuple(e) for e in data["edges"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise TilepotError(f"malformed graph JSON: {exc}") from None


def load_graph(path: str | Path) -> MultiGraph:
    return MultiGraph.from_json(json.loads(Path(path).read_text()))


# --------------------------------------------------------------------------
# generators

# Cube numbering: vertex i here is v_{i+1} of the usual figure, with v1
# adjacent to v2, v3, v5 and v7 antipodal to v1.
_CUBE = [(0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3), (2, 7), (3, 6), (4, 5), (4, 7), (5, 6), (6, 7)]

# Octahedron as K_{2,2,2}; antipodal pairs are (0,1), (2,3), (4,5).
_OCTA = [(u, v) for u in range(6) for v in range(u + 1, 6) if not (u % 2 == 0 and v == u + 1)]


def _icosahedron():
    # 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom.
    e = []
    for j in range(5):
        up, low = 1 + j, 6 + j
        e += [(0, up), (up, 1 + (j + 1) % 5), (low, 6 + (j + 1) % 5), (low, 11)]
        e += [(up, low), (up, 6 + (j + 1) % 5)]
    return e


def _dodecahedron():
    # outer 5-cycle 0..4, middle 10-cycle 5..14, inner 5-cycle 15..19
    e = []
    for i in range(5):
        e += [(i, (i + 1) % 5), (i, 5 + 2 * i)]
        e += [(15 + i, 15 + (i + 1) % 5), (15 + i, 5 + 2 * i + 1)]
    for i in range(10):
        e.append((5 + i, 5 + (i + 1) % 10))
    return e


PLATONIC = {
    "tetrahedron": (4, [(u, v) for u in range(4) for v in range(u + 1, 4)]),
    "hexahedron": (8, _CUBE),
    "octahedron": (6, _OCTA),
    "icosahedron": (12, _icosahedron()),
    "dodecahedron": (20, _dodecahedron()),
}
_ALIASES = {"tetra": "tetrahedron", "cube": "hexahedron", "hexa": "hexahedron",
            "octa": "octahedron", "icosa": "icosahedron", "dodeca": "dodecahedron"}

FAMILIES = ("complete", "cycle", "platonic", "square_lattice", "triangle_lattice",
            "square_tube", "triangle_tube")


def _sorted_graph(n, edges):
    return MultiGraph(n, sorted((min(u, v), max(u, v)) for u, v in edges))


def _need(cond, msg):
    if not cond:
        raise DegenerateInputError(msg)


def _dims(family, params):
    _need(len(params) == 2, f"{family} takes two dimensions (rows, cols)")
    return int(params[0]), int(params[1])


def _lattice_edges(m, n, cols, diagonal, wrap):
    # vertex (r, c) -> r * cols + c; with wrap, column `cols` is column 0
    def vid(r, c):
        return r * cols + (c % cols)

    edges = []
    hspan = cols if wrap else cols - 1
    for r in range(m):
        for c in range(hspan):
            edges.append((vid(r, c), vid(r, c + 1)))
    for r in range(m - 1):
        for c in range(cols):
            edges.append((vid(r, c), vid(r + 1, c)))
        if diagonal:
            for c in range(hspan):
                edges.append((vid(r, c), vid(r + 1, c + 1)))
    return edges


def generate(family: str, *params) -> MultiGraph:
    """Build a graph from one of the supported families.

    ``generate("square_lattice", 2, 3)``, ``generate("platonic", "hexahedron")``
    and the shortcut ``generate("hexahedron")`` all work. Lattices number
    vertices row-major: row ``r``, column ``c`` is ``r * cols + c``.

    Tubes (``m`` rows by ``n`` drawn columns) identify the first and last
    drawn column, so each row closes into a cycle of ``n - 1`` vertices and
    the tube has ``m * (n - 1)`` vertices. Horizontal edges run
    ``(r, c) - (r, c+1)`` and triangle diagonals ``(r, c) - (r+1, c+1)``,
    columns taken mod ``n - 1``.
    """
    fam = family.lower()
    if fam in _ALIASES or fam in PLATONIC:
        params = (fam,) + tuple(params)
        fam = "platonic"
    if fam == "platonic":
        _need(len(params) == 1, "platonic takes one solid name")
        name = _ALIASES.get(str(params[0]).lower(), str(params[0]).lower())
        if name not in PLATONIC:
            raise DegenerateInputError(f"unknown platonic solid {params[0]!r}")
        n, edges = PLATONIC[name]
        return _sorted_graph(n, edges)
    if fam == "complete":
        _need(len(params) == 1, "complete takes one size")
        k = int(params[0])
        _need(k >= 1, "complete graph needs n >= 1")
        return _sorted_graph(k, [(u, v) for u in range(k) for v in range(u + 1, k)])
    if fam == "cycle":
        _need(len(params) == 1, "cycle takes one size")
        k = int(params[0])
        _need(k >= 3, "cycle needs n >= 3")
        return _sorted_graph(k, [(i, (i + 1) % k) for i in range(k)])
    if fam in ("square_lattice", "triangle_lattice"):
        m, n = _dims(fam, params)
        _need(m >= 2 and n >= 2, f"{fam} needs m, n >= 2")
        return _sorted_graph(m * n, _lattice_edges(m, n, n, fam == "triangle_lattice", False))
    if fam in ("square_tube", "triangle_tube"):
        m, n = _dims(fam, params)
        _need(m >= 2, f"{fam} needs m >= 2")
        _need(n >= 4, f"{fam} needs n >= 4 (smaller tubes are degenerate)")
        cols = n - 1
        return _sorted_graph(m * cols, _lattice_edges(m, n, cols, fam == "triangle_tube", True))
    raise DegenerateInputError(f"unknown graph family {family!r}")


# --------------------------------------------------------------------------
# valency statistics


@dataclass(frozen=True)
class ValencyStats:
    av: int
    ov: int
    ev: int
    degrees: tuple[int, ...]


def valency_stats(graph: MultiGraph) -> ValencyStats:
    if graph.n == 0:
        raise DegenerateInputError("valency statistics need a nonempty graph")
    ds = tuple(sorted(set(graph.degrees())))
    odd = sum(1 for d in ds if d % 2)
    return ValencyStats(av=len(ds), ov=odd, ev=len(ds) - odd, degrees=ds)


# --------------------------------------------------------------------------
# canonical labeling


def _refine(adj, loops, colors):
    n = len(colors)
    ncells = len(set(colors))
    while True:
        sigs = [
            (colors[v], loops[v], tuple(sorted((colors[w], m) for w, m in adj[v].items())))
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == ncells:
            return new
        colors, ncells = new, len(rank)


class _Canon:
    """Individualise-refine search for the lexicographically least relabeling.

    Along the leftmost path of the search tree, children in one orbit of the
    automorphisms found so far are skipped; those automorphisms all fix the
    current prefix, which keeps the pruning sound.
    """

    def __init__(self, g: MultiGraph):
        self.g = g
        self.adj = g.neighbors
        self.loops = g.loops
        self.best_key = None
        self.best_lab = None
        self.first_key = None
        self.first_lab = None
        self.autos: list[list[int]] = []

    def run(self):
        init = [(self.g.degree(v), self.loops[v]) for v in range(self.g.n)]
        rank = {c: i for i, c in enumerate(sorted(set(init)))}
        self._search([rank[c] for c in init], True)
        return self.best_key, self.best_lab

    def _leaf(self, lab):
        key = tuple(sorted((min(lab[u], lab[v]), max(lab[u], lab[v])) for u, v in self.g.edges))
        if self.first_key is None:
            self.first_key, self.first_lab = key, lab
        elif key == self.first_key:
            inv = [0] * len(lab)
            for v, p in enumerate(lab):
                inv[p] = v
            self.autos.append([inv[self.first_lab[v]] for v in range(len(lab))])
        if self.best_key is None or key < self.best_key:
            self.best_key, self.best_lab = key, lab

    def _orbit_roots(self):
        parent = list(range(self.g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for perm in self.autos:
            for v, w in enumerate(perm):
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return find

    def _search(self, colors, first_path):
        colors = _refine(self.adj, self.loops, colors)
        sizes = Counter(colors)
        target = next((c for c in sorted(sizes) if sizes[c] > 1), None)
        if target is None:
            self._leaf(colors)
            return
        cell = [v for v in range(self.g.n) if colors[v] == target]
        done: list[int] = []
        for i, v in enumerate(cell):
            if first_path and done:
                find = self._orbit_roots()
                if find(v) in {find(u) for u in done}:
                    continue
            child = [2 * c + (0 if u == v else 1) for u, c in enumerate(colors)]
            self._search(child, first_path and i == 0)
            done.append(v)


def _canonical_connected(g: MultiGraph):
    if g.n == 1:
        return tuple((0, 0) for _ in g.edges), [0]
    return _Canon(g).run()


def canonical_form(graph: MultiGraph) -> tuple[tuple, list[int]]:
    """Isomorphism-invariant key plus the labeling that produces it.

    The key is ``(n, sorted relabeled edges)``; ``labeling[v]`` is the
    canonical position of vertex ``v``. Components are canonised one by one
    and concatenated in sorted order.
    """
    parts = []
    for comp in graph.components():
        key, lab = _canonical_connected(graph.subgraph(comp))
        parts.append((len(comp), key, comp, lab))
    parts.sort(key=lambda p: (p[0], p[1]))
    labeling = [0] * graph.n
    edges = []
    offset = 0
    for size, key, comp, lab in parts:
        for i, v in enumerate(comp):
            labeling[v] = offset + lab[i]
        edges.extend((u + offset, v + offset) for u, v in key)
        offset += size
    return (graph.n, tuple(edges)), labeling


def canonical_key(graph: MultiGraph) -> tuple:
    return canonical_form(graph)[0]


def isomorphic(g: MultiGraph, h: MultiGraph) -> tuple[bool, list[int] | None]:
    """Return ``(True, mapping)`` with ``mapping[v]`` the image in ``h`` of
    vertex ``v`` of ``g``, or ``(False, None)``."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False, None
    if sorted(g.degrees()) != sorted(h.degrees()) or sorted(g.loops) != sorted(h.loops):
        return False, None
    kg, lg = canonical_form(g)
    kh, lh = canonical_form(h)
    if kg != kh:
        return False, None
    inv_h = [0] * h.n
    for v, p in enumerate(lh):
        inv_h[p] = v
    return True, [inv_h[lg[v]] for v in range(g.n)]
