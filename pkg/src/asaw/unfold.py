"""Unfolding half-space walks into bridges, and back.

A half-space walk splits at its first bridge point into an initial bridge
and a remainder; reflecting the remainder and iterating yields a bridge with
strictly decreasing stage spans.  The marked variant records, at each stage,
the plaquettes between the bridge and the remainder that are flippable for
the bridge; the multivalued variant additionally flips a committed disjoint
subset of them in all ways.  Refolding inverts everything given the spans,
inverting the last bridge first (it carries no flips) and unflipping
backwards against the reconstructed remainder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, List, Set, Tuple

from .lattice import Plaquette, add, neg, origin, translate_plaquette, unit
from .walks import (Walk, adj_between, classify, concat, is_flippable,
                    reverse, span, subwalk)
from .flips import flip_set, greedy_disjoint, unflip_with_memory


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def alpha_fraction(d: int) -> Fraction:
    return Fraction(1, 1 + 8 * (d - 1) ** 2)


@dataclass
class UnfoldResult:
    bridges: List[Walk]                      # stage-local, each from the origin
    spans: List[int]                         # strictly decreasing
    marked_sets: List[FrozenSet[Plaquette]]  # stage-local adj_i; last empty
    depth: int
    unfolded: Walk                           # the concatenated bridge
    marked_union: FrozenSet[Plaquette]       # marks translated into `unfolded`


def split_first_bridge(w: Walk) -> Tuple[Walk, Walk]:
    """(initial bridge, remainder translated to the origin)."""
    c = classify(w)
    if not c.half_space:
        raise ValueError("split_first_bridge needs a half-space walk")
    bp = c.bridge_point
    bridge = subwalk(w, 0, bp)
    remainder = subwalk(w, bp, w.n).translate(neg(w.vertices[bp]))
    return bridge, remainder


def marked_unfold(w: Walk) -> UnfoldResult:
    c = classify(w)
    if not c.half_space:
        raise ValueError("unfolding needs a half-space walk")
    d = w.d
    bridges: List[Walk] = []
    spans: List[int] = []
    marked: List[FrozenSet[Plaquette]] = []
    union: Set[Plaquette] = set()
    cur = w
    shift = origin(d)
    while True:
        bp = classify(cur).bridge_point
        bridge = subwalk(cur, 0, bp)
        bridges.append(bridge)
        spans.append(span(bridge))
        if bp == cur.n:
            marked.append(frozenset())
            break
        rem = subwalk(cur, bp, cur.n)  # in stage coordinates
        marks = frozenset(p for p in adj_between(bridge, rem)
                          if is_flippable(p, bridge))
        marked.append(marks)
        union.update(translate_plaquette(p, shift) for p in marks)
        shift = add(shift, bridge.vertices[-1])
        cur = rem.translate(neg(cur.vertices[bp])).reflect(1)
    unfolded = bridges[0]
    for b in bridges[1:]:
        unfolded = concat(unfolded, b)
    return UnfoldResult(bridges=bridges, spans=spans, marked_sets=marked,
                        depth=len(bridges), unfolded=unfolded,
                        marked_union=frozenset(union))


def classical_unfold(w: Walk) -> UnfoldResult:
    """Unfolding without using the marks (they are recorded anyway)."""
    return marked_unfold(w)


def committed_disjoint_marks(res: UnfoldResult, d: int) -> List[Plaquette]:
    """The committed ceil(alpha k)-subset of disjoint marked plaquettes."""
    k = len(res.marked_union)
    need = _ceil_frac(alpha_fraction(d) * k)
    chosen = greedy_disjoint(res.marked_union)
    if len(chosen) < need:
        raise AssertionError("greedy selection fell below the alpha fraction")
    return chosen[:need]


def multivalued_unfold(w: Walk, delta: Fraction) -> Set[Walk]:
    """All bridges obtained by flipping ceil(delta alpha k) committed marks."""
    delta = Fraction(delta)
    if not 0 < delta < Fraction(1, 2):
        raise ValueError("delta must lie in (0, 1/2)")
    res = marked_unfold(w)
    k = len(res.marked_union)
    star = committed_disjoint_marks(res, w.d)
    dk = _ceil_frac(delta * alpha_fraction(w.d) * k)
    images = {flip_set(B, res.unfolded) for B in combinations(star, dk)}
    return images


def refold(w_unfolded: Walk, spans: List[int]) -> Walk:
    """The unique half-space preimage of an (optionally flipped) unfolding.

    Works stage by stage from the last bridge backwards: the last bridge
    carries no flips, and each earlier stage is recovered by unflipping
    against the already-reconstructed remainder.
    """
    spans = list(spans)
    if not spans:
        raise ValueError("need at least one span")
    if any(s2 >= s1 for s1, s2 in zip(spans, spans[1:])):
        raise ValueError("spans must be strictly decreasing")
    if sum(spans) != span(w_unfolded):
        raise ValueError("spans do not sum to the span of the unfolded walk")
    if not classify(w_unfolded).bridge:
        raise ValueError("refold input must be a bridge")
    return _refold(w_unfolded, spans)


def _refold(w: Walk, spans: List[int]) -> Walk:
    if len(spans) == 1:
        return w
    base = w.vertices[0][0]
    target = base + spans[0]
    firsts = [v[0] for v in w.vertices]
    cut = max(i for i, c in enumerate(firsts) if c == target)
    piece = subwalk(w, 0, cut)
    rest = subwalk(w, cut, w.n).translate(neg(w.vertices[cut]))
    inner = _refold(rest, spans[1:])  # the next-stage half-space walk
    remainder = inner.reflect(1).translate(w.vertices[cut])
    bridge, _ = unflip_with_memory(piece, remainder)
    return Walk(bridge.vertices + remainder.vertices[1:])


@dataclass
class SplitMapDetail:
    m: int
    k: int
    degenerate: bool
    images: Set[Tuple[Walk, Walk]]


def theorem_split_map(w: Walk, delta: Fraction) -> Set[Tuple[Walk, Walk]]:
    return split_map_detail(w, delta).images


def split_map_detail(w: Walk, delta: Fraction) -> SplitMapDetail:
    """Split a SAW at the last minimum of pi_1 into two half-space walks.

    Returns all pairs (eta1, eta2) where eta2 is the translated tail and
    eta1 is a one-step walk to e_1 concatenated with the reversed head,
    flipped over each committed-size subset of the disjoint flippable
    plaquettes between the two pieces.  Splits with an empty tail (pi_1
    minimized at the final vertex) are flagged degenerate.
    """
    delta = Fraction(delta)
    if not w.is_saw():
        raise ValueError("split map needs a self-avoiding walk")
    d = w.d
    firsts = [v[0] for v in w.vertices]
    lo = min(firsts)
    m = max(i for i, c in enumerate(firsts) if c == lo)
    head = subwalk(w, 0, m)
    tail = subwalk(w, m, w.n)
    eta2 = tail.translate(neg(w.vertices[m]))
    flippers = {p for p in adj_between(head, tail) if is_flippable(p, head)} \
        if m >= 1 else set()
    k = len(flippers)
    star = greedy_disjoint(flippers)[:_ceil_frac(alpha_fraction(d) * k)]
    dk = _ceil_frac(delta * alpha_fraction(d) * k)
    e1 = unit(d, 1)
    x = tuple(a - b for a, b in zip(e1, w.vertices[m]))
    tilde1 = concat(Walk((origin(d), e1)), reverse(head))
    images = set()
    for B in combinations(star, dk):
        moved = [translate_plaquette(p, x) for p in B]
        images.add((flip_set(moved, tilde1), eta2))
    return SplitMapDetail(m=m, k=k, degenerate=(m == w.n and w.n > 0),
                          images=images)


def distinct_partitions(n: int) -> int:
    """Number of partitions of n into distinct parts, exactly.

    Dynamic programming on the truncated product of (1 + x^k): coefficients
    are packed into fixed-width limbs of one big integer so each part is a
    single shift-add, which keeps n = 10^4 around a second.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    width = int(math.pi * math.sqrt(n / 3) / math.log(2)) + 16
    mask_all = (1 << ((n + 1) * width)) - 1
    poly = 1
    for k in range(1, n + 1):
        poly = (poly + (poly << (k * width))) & mask_all
    return (poly >> (n * width)) & ((1 << width) - 1)
