"""Walks on Z^d: representation, classification, adjacency pairs, surgery.

A walk is an ordered vertex sequence with consecutive vertices distinct.  Walk
equality is exact vertex-sequence equality (rooted and oriented; polygons
included).  Steps need not be unit vectors; only unit edges ever take part in
adjacency counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Set, Tuple

from .lattice import (Edge, Plaquette, Point, add, canonical_edge, edge_axis,
                      is_unit_edge, neg, plaquette_of_vertices, reflect_point,
                      sub, unit)


class Walk:
    __slots__ = ("vertices", "_unit_edges")

    def __init__(self, vertices: Iterable[Point]):
        vs = tuple(tuple(v) for v in vertices)
        if not vs:
            raise ValueError("a walk has at least one vertex")
        d = len(vs[0])
        for a, b in zip(vs, vs[1:]):
            if len(b) != d:
                raise ValueError("inconsistent dimensions along walk")
            if a == b:
                raise ValueError("consecutive vertices of a walk must differ")
        self.vertices = vs
        self._unit_edges: Optional[frozenset[Edge]] = None

    # -- basics ------------------------------------------------------------

    @property
    def n(self) -> int:
        """Number of steps."""
        return len(self.vertices) - 1

    @property
    def d(self) -> int:
        return len(self.vertices[0])

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> Point:
        return self.vertices[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Walk) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Walk({format_walk(self)!r})"

    def steps(self) -> Tuple[Point, ...]:
        return tuple(sub(b, a) for a, b in zip(self.vertices, self.vertices[1:]))

    def step_edges(self) -> Tuple[Edge, ...]:
        """Canonical edges of consecutive vertex pairs, in walk order."""
        return tuple(canonical_edge(a, b)
                     for a, b in zip(self.vertices, self.vertices[1:]))

    def unit_edges(self) -> frozenset[Edge]:
        """The set E(w) of unit lattice edges traversed by the walk."""
        if self._unit_edges is None:
            self._unit_edges = frozenset(
                e for e in self.step_edges() if is_unit_edge(e))
        return self._unit_edges

    def is_saw(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def is_polygon(self) -> bool:
        if self.n <= 2 or self.vertices[0] != self.vertices[-1]:
            return False
        return len(set(self.vertices)) == len(self.vertices) - 1

    # -- surgery -----------------------------------------------------------

    def translate(self, x: Point) -> "Walk":
        return Walk(add(v, x) for v in self.vertices)

    def reflect(self, axis: int) -> "Walk":
        return Walk(reflect_point(v, axis) for v in self.vertices)


def single_vertex(p: Point) -> Walk:
    return Walk((p,))


def concat(w1: Walk, w2: Walk) -> Walk:
    """w1 followed by w2 translated to start at w1's terminal vertex."""
    if w1.d != w2.d:
        raise ValueError("dimension mismatch in concatenation")
    shift = sub(w1.vertices[-1], w2.vertices[0])
    return Walk(w1.vertices + tuple(add(v, shift) for v in w2.vertices[1:]))


def reverse(w: Walk) -> Walk:
    return Walk(w.vertices[::-1])


def subwalk(w: Walk, i: int, j: int) -> Walk:
    if not 0 <= i <= j <= w.n:
        raise IndexError(f"subwalk indices ({i},{j}) out of range for n={w.n}")
    return Walk(w.vertices[i:j + 1])


@dataclass(frozen=True)
class WalkClass:
    self_avoiding: bool
    polygon: bool
    bridge: bool
    half_space: bool
    span: int
    bridge_point: Optional[int]


def span(w: Walk) -> int:
    firsts = [v[0] for v in w.vertices]
    return max(firsts) - min(firsts)


def classify(w: Walk) -> WalkClass:
    """Geometric classification of a walk, relative to its initial vertex.

    Half-space: SAW with pi_1 strictly above the start after step 0.  Bridge:
    half-space walk whose maximal pi_1 is attained at the final vertex.  The
    bridge point is the maximal index attaining max pi_1 (half-space only).
    """
    saw = w.is_saw()
    poly = w.is_polygon()
    firsts = [v[0] for v in w.vertices]
    lo, hi = min(firsts), max(firsts)
    half_space = saw and all(c > firsts[0] for c in firsts[1:])
    bridge = half_space and firsts[-1] == hi
    bp = None
    if half_space:
        bp = max(i for i, c in enumerate(firsts) if c == hi)
    return WalkClass(self_avoiding=saw, polygon=poly, bridge=bridge,
                     half_space=half_space, span=hi - lo, bridge_point=bp)


# -- adjacency ---------------------------------------------------------------


def _partner_edges(e: Edge):
    """The 2(d-1) unit edges adjacent to e (opposite sides of its plaquettes)."""
    d = len(e[0])
    a = edge_axis(e)
    for b in range(1, d + 1):
        if b == a:
            continue
        for s in (1, -1):
            shift = unit(d, b, s)
            yield (add(e[0], shift), add(e[1], shift))


def adj_pairs(w: Walk) -> Tuple[int, Set[Plaquette]]:
    """(number of adjacent edge pairs of w, set of plaquettes they span)."""
    edges = w.unit_edges()
    count = 0
    plaqs: Set[Plaquette] = set()
    for e in edges:
        for f in _partner_edges(e):
            if f in edges and e < f:  # each unordered pair once
                count += 1
                plaqs.add(plaquette_of_vertices((*e, *f)))
    return count, plaqs


def cross_adj_pairs(w1: Walk, w2: Walk) -> int:
    """Number of adjacent pairs {f1,f2} with f1 an edge of w1, f2 of w2."""
    e1, e2 = w1.unit_edges(), w2.unit_edges()
    if len(e2) < len(e1):
        e1, e2 = e2, e1
    return sum(1 for e in e1 for f in _partner_edges(e) if f in e2)


def is_flippable(p: Plaquette, w: Walk) -> bool:
    """True iff w has exactly one edge in p and no other vertices in p.

    Equivalently: the indices i with w_i in p are {i, i+1} for a unique i.
    """
    pv = set(p.vertices())
    hits = [i for i, v in enumerate(w.vertices) if v in pv]
    if len(hits) != 2 or hits[1] != hits[0] + 1:
        return False
    e = canonical_edge(w.vertices[hits[0]], w.vertices[hits[0] + 1])
    return is_unit_edge(e)


def adj_between(w1: Walk, w2: Walk, flippable_only: bool = False) -> Set[Plaquette]:
    """Plaquettes spanned by a unit edge of w1 and one of w2 (adj(w1, w2)).

    With flippable_only, keep only plaquettes flippable for w2.
    """
    e1, e2 = w1.unit_edges(), w2.unit_edges()
    plaqs: Set[Plaquette] = set()
    for e in e1:
        for f in _partner_edges(e):
            if f in e2:
                plaqs.add(plaquette_of_vertices((*e, *f)))
    if flippable_only:
        plaqs = {p for p in plaqs if is_flippable(p, w2)}
    return plaqs


# -- serialization -----------------------------------------------------------


def format_walk(w: Walk) -> str:
    return ";".join(",".join(str(c) for c in v) for v in w.vertices)


def parse_walk(s: str) -> Walk:
    verts = []
    for part in s.strip().split(";"):
        verts.append(tuple(int(c) for c in part.split(",")))
    return Walk(verts)
