"""Interval graphs, laces, compatible edges, and the expansion identity.

Graphs live on an integer interval [a,b]; edges are index pairs {i,j} with
j > i+1.  A graph is connected when every interior vertex is strictly
covered by some edge; a lace is minimally connected.  Each lace on [0,n]
with m edges corresponds to a composition of n into 2m-1 interval lengths,
which drives both lace enumeration and the diagrammatic bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import kernels
from .enumeration import check_cap, thread_count, two_point_coeffs
from .interaction import ModelParams, u_ij
from .series import Series, SpatialSeries, delta_series
from .walks import Walk

EdgeIJ = Tuple[int, int]


@dataclass(frozen=True)
class IntervalGraph:
    a: int
    b: int
    edges: FrozenSet[EdgeIJ]

    def __post_init__(self):
        for i, j in self.edges:
            if not (self.a <= i < j <= self.b and j > i + 1):
                raise ValueError(f"invalid edge ({i},{j}) on [{self.a},{self.b}]")


def make_graph(a: int, b: int, edges) -> IntervalGraph:
    return IntervalGraph(a, b, frozenset(tuple(sorted(e)) for e in edges))


def is_connected(G: IntervalGraph) -> bool:
    """Every j strictly inside [a,b] is strictly covered by some edge."""
    for j in range(G.a + 1, G.b):
        if not any(i < j < k for i, k in G.edges):
            return False
    return True


def graph_predicates(G: IntervalGraph) -> Tuple[bool, bool]:
    conn = is_connected(G)
    lace = conn and all(
        not is_connected(IntervalGraph(G.a, G.b, G.edges - {e}))
        for e in G.edges)
    return conn, lace


@dataclass(frozen=True)
class Lace:
    a: int
    b: int
    edges: Tuple[EdgeIJ, ...]  # sorted by right endpoint
    m: int
    composition: Tuple[int, ...]

    def graph(self) -> IntervalGraph:
        return IntervalGraph(self.a, self.b, frozenset(self.edges))


def lace_map(G: IntervalGraph) -> Lace:
    """Canonical lace of a connected graph via the max/min endpoint recursion."""
    if not is_connected(G):
        raise ValueError("lace map needs a connected graph")
    if not G.edges:
        return Lace(G.a, G.b, (), 0, (G.b - G.a,) if G.b > G.a else ())
    s = G.a
    t = max(j for i, j in G.edges if i == s)
    chosen = [(s, t)]
    while t < G.b:
        t_next = max(j for i, j in G.edges if i < t)
        s_next = min(i for i, j in G.edges if j == t_next)
        chosen.append((s_next, t_next))
        t = t_next
    edges = tuple(sorted(chosen, key=lambda e: (e[1], e[0])))
    return Lace(G.a, G.b, edges, len(edges), _composition_of(G.a, G.b, edges))


def _composition_of(a: int, b: int, edges: Tuple[EdgeIJ, ...]) -> Tuple[int, ...]:
    """Interval lengths induced by a lace: breakpoints s2,t1,s3,t2,...,tm."""
    m = len(edges)
    if m == 0:
        return (b - a,) if b > a else ()
    ss = [e[0] for e in edges]
    ts = [e[1] for e in edges]
    # breakpoints interleave: M_1 = s_2, M_2 = t_1, M_3 = s_3, M_4 = t_2, ...
    M = [a]
    for i in range(m - 1):
        M.append(ss[i + 1])
        M.append(ts[i])
    M.append(ts[m - 1])
    return tuple(M[i + 1] - M[i] for i in range(len(M) - 1))


def breakpoints(L: Lace) -> List[int]:
    M = [L.a]
    for part in L.composition:
        M.append(M[-1] + part)
    return M


def lace_from_composition(a: int, comp: Tuple[int, ...]) -> Lace:
    """The unique lace whose intervals have the given lengths."""
    if len(comp) % 2 == 0:
        raise ValueError("composition needs an odd number of parts")
    m = (len(comp) + 1) // 2
    M = [a]
    for part in comp:
        M.append(M[-1] + part)
    edges = []
    for i in range(1, m + 1):
        s = a if i == 1 else M[2 * i - 3]
        t = M[2 * i] if i < m else M[2 * m - 1]
        edges.append((s, t))
    return Lace(a, M[-1], tuple(sorted(edges, key=lambda e: (e[1], e[0]))),
                m, tuple(comp))


def compositions(n: int, m: int):
    """All interval-length vectors for laces on [0,n] with m edges.

    2m-1 parts; the odd middle slots 3,5,...,2m-3 may vanish, all other
    parts are at least 1.
    """
    slots = 2 * m - 1
    optional = {k for k in range(3, 2 * m - 2, 2)}

    def rec(idx, remaining, acc):
        if idx == slots:
            if remaining == 0:
                yield tuple(acc)
            return
        lo = 0 if (idx + 1) in optional else 1
        for v in range(lo, remaining + 1):
            acc.append(v)
            yield from rec(idx + 1, remaining - v, acc)
            acc.pop()

    yield from rec(0, n, [])


def enumerate_laces(n: int, m: int) -> List[Lace]:
    if n < 2 or m < 1:
        return []
    out = [lace_from_composition(0, comp) for comp in compositions(n, m)]
    return [L for L in out if all(j > i + 1 for i, j in L.edges)]


def all_edges(a: int, b: int) -> List[EdgeIJ]:
    return [(i, j) for i in range(a, b - 1) for j in range(i + 2, b + 1)]


def compatible_edges(L: Lace) -> FrozenSet[EdgeIJ]:
    """Edges whose addition leaves the lace map fixed (and are not in L)."""
    base = frozenset(L.edges)
    out = set()
    for e in all_edges(L.a, L.b):
        if e in base:
            continue
        g = IntervalGraph(L.a, L.b, base | {e})
        if lace_map(g).edges == L.edges:
            out.add(e)
    return frozenset(out)


def compatible_classified(L: Lace) -> FrozenSet[EdgeIJ]:
    """The same set via the interval classification (cross-check path)."""
    m = L.m
    M = breakpoints(L)
    Mx = lambda k: M[k] if k >= 0 else 0  # noqa: E731

    def interval_of(j: int) -> int:
        for k in range(1, 2 * m):
            if Mx(k - 1) < j <= Mx(k):
                return k
        return 0

    n = L.b
    out = set()
    for i, j in all_edges(L.a, L.b):
        kj = interval_of(j)
        if kj % 2 == 1:
            k = (kj - 1) // 2
            ok = any(Mx(ell - 1) < i <= Mx(ell)
                     for ell in range(max(1, 2 * k - 1), 2 * k + 2))
            if k != 1 and i == Mx(2 * k - 2):
                ok = True
            if j == M[2 * m - 1] and i <= Mx(2 * m - 3):
                ok = False
        else:
            k = (kj - 2) // 2
            ok = any(Mx(ell - 1) < i <= Mx(ell)
                     for ell in range(max(1, 2 * k - 1), 2 * k + 3))
            if k != 1 and i == Mx(2 * k - 2):
                ok = True
            if j == Mx(2 * k + 2) and i <= Mx(2 * k - 1):
                ok = False
        if ok:
            out.add((i, j))
    return frozenset(out)


def compatible_by_interval(L: Lace) -> List[Tuple[EdgeIJ, ...]]:
    """C(L) partitioned by the interval holding the right endpoint (1-based)."""
    M = breakpoints(L)
    buckets: List[List[EdgeIJ]] = [[] for _ in range(len(L.composition))]
    for (i, j) in sorted(compatible_edges(L)):
        for k in range(len(M) - 1):
            if M[k] < j <= M[k + 1]:
                buckets[k].append((i, j))
                break
    return [tuple(b) for b in buckets]


# ---------------------------------------------------------------------------
# K and J per walk


def K_value(P: ModelParams, w: Walk, a: int, b: int,
            method: str = "direct-product") -> Fraction:
    if not 0 <= a <= b <= w.n:
        raise IndexError("interval out of range")
    if method == "direct-product":
        out = Fraction(1)
        for j in range(a + 2, b + 1):
            for i in range(a, j - 1):
                out *= 1 - u_ij(P, w, i, j)
                if out == 0:
                    return out
        return out
    if method == "graph-sum":
        if b - a > 6:
            raise ValueError("graph-sum capped at interval length 6")
        edges = all_edges(a, b)
        total = Fraction(0)
        for r in range(len(edges) + 1):
            for G in combinations(edges, r):
                term = Fraction(1)
                for i, j in G:
                    term *= -u_ij(P, w, i, j)
                    if term == 0:
                        break
                total += term
        return total
    raise ValueError(f"unknown method {method!r}")


def J_value(P: ModelParams, w: Walk, a: int, b: int,
            method: str = "recursion") -> Fraction:
    if not 0 <= a <= b <= w.n:
        raise IndexError("interval out of range")
    if b - a <= 1:
        return Fraction(1)
    if method == "recursion":
        K: Dict[Tuple[int, int], Fraction] = {}
        for lo in range(a, b + 1):
            acc = Fraction(1)
            K[(lo, lo)] = acc
            if lo < b:
                K[(lo, lo + 1)] = acc
            for hi in range(lo + 2, b + 1):
                acc = K[(lo, hi - 1)]
                if acc != 0:
                    for i in range(lo, hi - 1):
                        acc *= 1 - u_ij(P, w, i, hi)
                        if acc == 0:
                            break
                K[(lo, hi)] = acc
        J: Dict[Tuple[int, int], Fraction] = {}
        for lo in range(a, b + 1):
            J[(lo, lo)] = Fraction(1)
            if lo < b:
                J[(lo, lo + 1)] = Fraction(1)
        for length in range(2, b - a + 1):
            for lo in range(a, b - length + 1):
                hi = lo + length
                val = K[(lo, hi)] - K[(lo + 1, hi)]
                for j in range(lo + 2, hi):
                    val -= J[(lo, j)] * K[(j, hi)]
                J[(lo, hi)] = val
        return J[(a, b)]
    if method == "lace-sum":
        total = Fraction(0)
        m = 1
        while True:
            laces = enumerate_laces(b - a, m)
            if not laces:
                break
            for L0 in laces:
                term = Fraction(1)
                for i, j in L0.edges:
                    term *= -u_ij(P, w, a + i, a + j)
                    if term == 0:
                        break
                if term == 0:
                    continue
                for i, j in compatible_edges(L0):
                    term *= 1 - u_ij(P, w, a + i, a + j)
                    if term == 0:
                        break
                total += term
            m += 1
        return total
    raise ValueError(f"unknown method {method!r}")


def J_m_value(P: ModelParams, w: Walk, m: int, a: int, b: int) -> Fraction:
    """Contribution of m-edge laces to J over [a,b]."""
    total = Fraction(0)
    for L0 in enumerate_laces(b - a, m):
        term = Fraction(1)
        for i, j in L0.edges:
            term *= -u_ij(P, w, a + i, a + j)
            if term == 0:
                break
        if term == 0:
            continue
        for i, j in compatible_edges(L0):
            term *= 1 - u_ij(P, w, a + i, a + j)
            if term == 0:
                break
        total += term
    return total


# ---------------------------------------------------------------------------
# kernel pack builders


def build_lace_pack(n: int, ms: List[int]):
    pack = []
    for m in ms:
        for L in enumerate_laces(n, m):
            pack.append((m, tuple(L.edges), tuple(sorted(compatible_edges(L)))))
    return tuple(pack)


def max_lace_size(n: int) -> int:
    m = 1
    while enumerate_laces(n, m + 1):
        m += 1
    return m


def build_comp_pack(n: int, m: int):
    """Per-composition data for the coefficient-wise diagrammatic bound."""
    pack = []
    for L in enumerate_laces(n, m):
        M = breakpoints(L)
        subs = tuple((M[k], M[k + 1]) for k in range(2 * m - 1))
        etas: List[Optional[Tuple[int, int]]] = [None]
        for k in range(2, 2 * m):
            if k == 2:
                etas.append((0, M[1]))
            elif k % 2 == 1:
                jj = (k - 1) // 2
                etas.append((M[2 * jj - 2], M[2 * jj]))
            else:
                jj = k // 2
                etas.append((M[2 * jj - 4], M[2 * jj - 1]))
        pack.append((tuple(L.edges), subs, tuple(etas),
                     tuple(compatible_by_interval(L))))
    return tuple(pack)


# ---------------------------------------------------------------------------
# series-level operations


def _poly_eval(coeffs, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _prefix_map(fn, d, steps, n, threads):
    """Run an endpoint-profile kernel over two-step prefixes and merge."""
    nt = thread_count(threads)
    prefixes = [(a, b) for a in steps for b in steps]
    if nt <= 1:
        parts = [fn(p) for p in prefixes]
    else:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=nt) as ex:
            parts = list(ex.map(fn, prefixes))
    out: Dict = {}
    for part in parts:
        for key, poly in part.items():
            if key in out:
                cur = list(out[key])
                if len(cur) < len(poly):
                    cur.extend([0] * (len(poly) - len(cur)))
                for i, c in enumerate(poly):
                    cur[i] += c
                out[key] = tuple(cur)
            else:
                out[key] = tuple(poly)
    return out


def pi_coeffs(P: ModelParams, m: int, N: int,
              threads: Optional[int] = None) -> SpatialSeries:
    """Lace-expansion coefficients by endpoint and order.

    m >= 1 gives the m-edge lace contribution; m = 0 is the full sum over
    all lace sizes (computed from the connected-graph sum per walk).
    """
    check_cap(P.D, N)
    if not P.D.uniform:
        raise ValueError("pi profiles require a uniform step distribution")
    d, steps = P.D.d, P.D.steps
    u = next(iter(P.D.support.values()))
    t = 1 + P.kappa
    acc: Dict[tuple, List[Fraction]] = {}
    for n in range(2, N + 1):
        if m == 0:
            prof = _prefix_map(lambda p: kernels.j_profile(d, steps, n, p),
                               d, steps, n, threads)
            items = prof.items()
        else:
            pack = build_lace_pack(n, [m])
            if not pack:
                continue
            prof = _prefix_map(
                lambda p: kernels.lace_profile(d, steps, n, pack, p),
                d, steps, n, threads)
            items = [(x, poly) for (x, _m), poly in prof.items()]
        un = u ** n
        for x, poly in items:
            row = acc.setdefault(tuple(x), [Fraction(0)] * (N + 1))
            row[n] += un * _poly_eval(poly, t)
    out = SpatialSeries(N)
    for x, coeffs in acc.items():
        out.set(x, Series(coeffs, N))
    return out


def diagram_bound_coeffs(P: ModelParams, m: int, N: int,
                         threads: Optional[int] = None) -> SpatialSeries:
    """Coefficient-wise upper bound dominating |pi^(m)| order by order.

    Evaluates, per walk and interval composition, the product of conditional
    subwalk weights restricted by the admissibility events, times the small
    kernel at the lace-edge displacements; summing absolute contributions
    dominates the m-edge lace sum coefficientwise.
    """
    if m < 2:
        raise ValueError("the diagrammatic bound applies for m >= 2")
    check_cap(P.D, N)
    if not P.D.uniform:
        raise ValueError("bound profiles require a uniform step distribution")
    d, steps = P.D.d, P.D.steps
    u = next(iter(P.D.support.values()))
    t = 1 + P.kappa
    kap = P.kappa
    acc: Dict[tuple, List[Fraction]] = {}
    for n in range(2, N + 1):
        pack = build_comp_pack(n, m)
        if not pack:
            continue
        prof = _prefix_map(
            lambda p: kernels.pim_bound_profile(d, steps, n, pack, p),
            d, steps, n, threads)
        un = u ** n
        for x, poly in prof.items():
            row = acc.setdefault(tuple(x), [Fraction(0)] * (N + 1))
            row[n] += un * _poly_eval(poly, t)
    out = SpatialSeries(N)
    for x, coeffs in acc.items():
        out.set(x, Series(coeffs, N))
    return out


def step_series(P: ModelParams, N: int) -> SpatialSeries:
    """The step distribution as the coefficient of z^1."""
    out = SpatialSeries(N)
    for x, p in P.D.support.items():
        coeffs = [Fraction(0)] * (N + 1)
        if N >= 1:
            coeffs[1] = p
        out.set(x, Series(coeffs, N))
    return out


def recursion_residual(P: ModelParams, N: int,
                       threads: Optional[int] = None) -> SpatialSeries:
    """G - [delta + zD*G + Pi*G], identically zero as formal power series."""
    G = two_point_coeffs(P, N, threads)
    Pi = pi_coeffs(P, 0, N, threads)
    zDG = step_series(P, N).convolve(G)
    PiG = Pi.convolve(G)
    return G - (delta_series(P.d, N) + zDG + PiG)
