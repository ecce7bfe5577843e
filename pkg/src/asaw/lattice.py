"""Hypercubic lattice geometry: points, unit edges, plaquettes, symmetries.

Points are plain tuples of ints; the dimension ``d`` is the tuple length
(``d >= 2`` everywhere).  Axes are numbered 1..d to match the usual e_i
notation.  A plaquette is the unit square ``{x, x+e_i, x+e_j, x+e_i+e_j}``
stored canonically as (coordinatewise-minimal vertex, axis pair i<j), which
makes equality, hashing and a global lexicographic order cheap.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Tuple

Point = Tuple[int, ...]
Edge = Tuple[Point, Point]  # canonical: lexicographically smaller endpoint first


def origin(d: int) -> Point:
    return (0,) * d


def unit(d: int, axis: int, sign: int = 1) -> Point:
    """The vector sign*e_axis (axis is 1-based)."""
    if not 1 <= axis <= d:
        raise ValueError(f"axis {axis} out of range for dimension {d}")
    v = [0] * d
    v[axis - 1] = sign
    return tuple(v)


def add(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def neg(p: Point) -> Point:
    return tuple(-a for a in p)


def norm1(p: Point) -> int:
    return sum(abs(a) for a in p)


def norm_inf(p: Point) -> int:
    return max(abs(a) for a in p)


def translate_point(p: Point, x: Point) -> Point:
    return add(p, x)


def reflect_point(p: Point, axis: int) -> Point:
    """Reflect in the coordinate hyperplane through the origin normal to e_axis."""
    q = list(p)
    q[axis - 1] = -q[axis - 1]
    return tuple(q)


def canonical_edge(u: Point, v: Point) -> Edge:
    if len(u) != len(v):
        raise ValueError("edge endpoints live in different dimensions")
    return (u, v) if u <= v else (v, u)


def is_unit_edge(e: Edge) -> bool:
    return norm1(sub(e[0], e[1])) == 1


def edge_axis(e: Edge) -> int:
    """1-based axis of a unit edge."""
    diff = sub(e[1], e[0])
    for i, c in enumerate(diff):
        if c != 0:
            return i + 1
    raise ValueError("degenerate edge")


class Plaquette(NamedTuple):
    base: Point
    axes: Tuple[int, int]  # 1-based, axes[0] < axes[1]

    def vertices(self) -> Tuple[Point, Point, Point, Point]:
        d = len(self.base)
        i, j = self.axes
        ei, ej = unit(d, i), unit(d, j)
        return (self.base, add(self.base, ei), add(self.base, ej),
                add(add(self.base, ei), ej))

    def edges(self) -> Tuple[Edge, Edge, Edge, Edge]:
        b, bi, bj, bij = self.vertices()
        return (canonical_edge(b, bi), canonical_edge(b, bj),
                canonical_edge(bi, bij), canonical_edge(bj, bij))

    def contains_vertex(self, p: Point) -> bool:
        return p in self.vertices()

    def disjoint_from(self, other: "Plaquette") -> bool:
        return not set(self.vertices()) & set(other.vertices())


def make_plaquette(base: Point, i: int, j: int) -> Plaquette:
    if i == j:
        raise ValueError("plaquette axes must differ")
    if i > j:
        i, j = j, i
    d = len(base)
    if not (1 <= i < j <= d):
        raise ValueError(f"axes ({i},{j}) invalid for dimension {d}")
    return Plaquette(base, (i, j))


def plaquette_of_vertices(vs: Iterable[Point]) -> Optional[Plaquette]:
    """Canonical plaquette with the given vertex set, or None."""
    vs = set(vs)
    if len(vs) != 4:
        return None
    base = min(vs)
    diffs = sorted(sub(v, base) for v in vs if v != base)
    axes = [i + 1 for i, _ in enumerate(base) if any(dv[i] for dv in diffs)]
    if len(axes) != 2:
        return None
    p = make_plaquette(base, axes[0], axes[1])
    return p if set(p.vertices()) == vs else None


def plaquette_of_edges(e1: Edge, e2: Edge) -> Optional[Plaquette]:
    """The plaquette spanned by two adjacent unit edges, or None.

    Two edges are adjacent exactly when their four endpoints are distinct and
    form a plaquette (so the edges are parallel, disjoint, at distance one).
    """
    if len(e1[0]) != len(e2[0]):
        raise ValueError("edges live in different dimensions")
    if not (is_unit_edge(e1) and is_unit_edge(e2)):
        return None
    return plaquette_of_vertices((e1[0], e1[1], e2[0], e2[1]))


def plaquettes_at_vertex(v: Point) -> list[Plaquette]:
    """All 4*C(d,2) plaquettes containing the vertex, canonically ordered."""
    d = len(v)
    out = []
    for i, j in combinations(range(1, d + 1), 2):
        for si in (0, -1):
            for sj in (0, -1):
                base = list(v)
                base[i - 1] += si
                base[j - 1] += sj
                out.append(Plaquette(tuple(base), (i, j)))
    return sorted(out)


def plaquettes_of_edge(e: Edge) -> list[Plaquette]:
    """All 2(d-1) plaquettes containing the unit edge, canonically ordered."""
    if not is_unit_edge(e):
        raise ValueError("not a unit edge")
    d = len(e[0])
    a = edge_axis(e)
    u = e[0]  # lexicographically smaller endpoint = coordinatewise min on axis a
    out = []
    for b in range(1, d + 1):
        if b == a:
            continue
        for sb in (0, -1):
            base = list(u)
            base[b - 1] += sb
            i, j = (a, b) if a < b else (b, a)
            out.append(Plaquette(tuple(base), (i, j)))
    return sorted(out)


def incident_plaquettes(target) -> list[Plaquette]:
    """Plaquettes containing a vertex (Point) or a unit edge (pair of Points)."""
    if isinstance(target, tuple) and target and isinstance(target[0], tuple):
        return plaquettes_of_edge(canonical_edge(*target))
    return plaquettes_at_vertex(target)


def translate_plaquette(p: Plaquette, x: Point) -> Plaquette:
    return Plaquette(add(p.base, x), p.axes)


def reflect_plaquette(p: Plaquette, axis: int) -> Plaquette:
    base = list(p.base)
    if axis in p.axes:
        base[axis - 1] = -(base[axis - 1] + 1)
    else:
        base[axis - 1] = -base[axis - 1]
    return Plaquette(tuple(base), p.axes)


def neighbour_plaquette_count(d: int) -> int:
    """Number R of plaquettes sharing at least one vertex with a fixed one."""
    return 8 * (d - 1) ** 2
