"""Plaquette flips: the local surgery behind all unfolding arguments.

A plaquette is flippable for a walk when the walk meets it in exactly one
edge and nothing else; the flip reroutes that edge around the other three
sides, preserving endpoints and self-avoidance and adding two steps.  Flips
at vertex-disjoint plaquettes commute, and a flipped walk can be inverted
given any memory walk whose edges span the flipped plaquettes.
"""

from __future__ import annotations

from typing import Iterable, List, Set, Tuple

from .lattice import Plaquette, Point, canonical_edge, plaquette_of_vertices
from .walks import Walk, is_flippable

__all__ = ["FlipSet", "is_flippable", "flip", "flip_set", "greedy_disjoint",
           "unflip_with_memory"]


class FlipSet:
    """A set of pairwise vertex-disjoint plaquettes."""

    def __init__(self, plaquettes: Iterable[Plaquette]):
        plist = sorted(set(plaquettes))
        seen: Set[Point] = set()
        for p in plist:
            vs = set(p.vertices())
            if vs & seen:
                raise ValueError("flip set plaquettes must be vertex-disjoint")
            seen |= vs
        self.plaquettes: Tuple[Plaquette, ...] = tuple(plist)

    def __iter__(self):
        return iter(self.plaquettes)

    def __len__(self):
        return len(self.plaquettes)


def _traversal(p: Plaquette, start: Point, end: Point) -> List[Point]:
    """The three-edge path around p from start to end avoiding the edge."""
    vs = set(p.vertices())
    others = vs - {start, end}
    a, b = others
    # start-a-b-end must follow plaquette edges (consecutive at L1 distance 1)
    def dist(u, v):
        return sum(abs(x - y) for x, y in zip(u, v))
    if dist(start, a) == 1 and dist(a, b) == 1 and dist(b, end) == 1:
        return [a, b]
    return [b, a]


def flip(p: Plaquette, w: Walk) -> Walk:
    """Flip w at p; the identity when p is not flippable for w."""
    if not is_flippable(p, w):
        return w
    pv = set(p.vertices())
    i = next(k for k, v in enumerate(w.vertices) if v in pv)
    detour = _traversal(p, w.vertices[i], w.vertices[i + 1])
    return Walk(w.vertices[:i + 1] + tuple(detour) + w.vertices[i + 1:])


def flip_set(B, w: Walk) -> Walk:
    """Compose flips over a disjoint plaquette set (order immaterial)."""
    if not isinstance(B, FlipSet):
        B = FlipSet(B)
    out = w
    for p in B:
        out = flip(p, out)
    return out


def greedy_disjoint(A: Iterable[Plaquette]) -> List[Plaquette]:
    """Greedy pairwise-disjoint subset in canonical plaquette order.

    Always at least ceil(|A|/(1+R)) = ceil(alpha |A|) plaquettes survive,
    since each selection discards at most R neighbours.  The deterministic
    order makes the committed choice reproducible.
    """
    chosen: List[Plaquette] = []
    occupied: Set[Point] = set()
    for p in sorted(set(A)):
        vs = set(p.vertices())
        if not vs & occupied:
            chosen.append(p)
            occupied |= vs
    return chosen


def unflip_with_memory(w_flipped: Walk, eta: Walk) -> Tuple[Walk, FlipSet]:
    """Invert flips against a memory walk.

    Preconditions: there exist a walk w and a disjoint set B of plaquettes,
    each spanned by an edge of eta and an edge of w and flippable for w, with
    eta o w self-avoiding and flip_set(B, w) = w_flipped.

    A flipped plaquette leaves an exact signature in w_flipped: a traversal
    of three consecutive plaquette sides whose middle edge belongs to eta
    (the middle edge is opposite the flipped-away edge, so it is the eta
    half of the defining adjacent pair), with no other walk vertices on the
    plaquette.  Since eta o w is self-avoiding, an unflipped plaquette can
    never show this signature, so collecting all signatures recovers B.
    Raises ValueError when no consistent preimage exists.
    """
    eta_edges = eta.unit_edges()
    vs = w_flipped.vertices
    n = w_flipped.n
    plaqs: Set[Plaquette] = set()
    for k in range(1, n - 1):
        mid = canonical_edge(vs[k], vs[k + 1])
        if mid not in eta_edges:
            continue
        p = plaquette_of_vertices(vs[k - 1:k + 3])
        if p is None:
            continue
        pv = set(p.vertices())
        hits = [i for i, v in enumerate(vs) if v in pv]
        if hits == [k - 1, k, k + 1, k + 2]:
            plaqs.add(p)
    B = FlipSet(plaqs)
    out = w_flipped
    for p in B:
        out = _unflip_one(p, out)
    return out, B


def _unflip_one(p: Plaquette, w: Walk) -> Walk:
    """Replace the three-edge traversal of p in w by the single free edge."""
    pv = set(p.vertices())
    hits = [k for k, v in enumerate(w.vertices) if v in pv]
    if len(hits) != 4 or hits != list(range(hits[0], hits[0] + 4)):
        raise ValueError("plaquette is not traversed by three consecutive edges")
    i = hits[0]
    edges = {canonical_edge(w.vertices[k], w.vertices[k + 1]) for k in range(i, i + 3)}
    if edges - set(p.edges()):
        raise ValueError("traversal does not follow the plaquette sides")
    return Walk(w.vertices[:i + 1] + w.vertices[i + 3:])
