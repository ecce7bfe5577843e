"""Exhaustive weighted enumeration: masses, two-point coefficients, torus.

All aggregate sums factor through integer profiles (walk counts keyed by
length and adjacency-pair count) computed by the kernel backend; weights
u^n (1+kappa)^pairs are applied afterwards, so one enumeration serves every
attraction strength.  Work parallelizes over two-step prefixes and partial
results merge in canonical prefix order, making output independent of the
thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import kernels
from ._kernel_pure import _pair_classes
from .interaction import ModelParams
from .lattice import Point
from .series import Series, SpatialSeries
from .stepdist import StepDistribution
from .unfold import marked_unfold
from .walks import Walk

HARD_CAPS = {
    "nn:2": 14,
    "nn": 9,
    "spread:L=1": 7,
    "spread": 5,
}


class CapExceeded(ValueError):
    pass


def hard_cap(D: StepDistribution) -> int:
    if D.spec == "nn":
        return HARD_CAPS["nn:2"] if D.d == 2 else HARD_CAPS["nn"]
    if D.spec.startswith("spread:"):
        return HARD_CAPS["spread:L=1"] if D.range_bound == 1 else HARD_CAPS["spread"]
    return HARD_CAPS["spread"]


def check_cap(D: StepDistribution, n: int) -> None:
    cap = hard_cap(D)
    if n > cap:
        raise CapExceeded(f"length {n} exceeds hard cap {cap} for {D.spec} in d={D.d}")


def thread_count(threads: Optional[int] = None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("ASAW_THREADS")
    return max(1, int(env)) if env else 1


def _merge(parts: List[dict]) -> dict:
    out: dict = {}
    for part in parts:
        for k, v in part.items():
            out[k] = out.get(k, 0) + v
    return out


def _profiles(D: StepDistribution, n_max: int, threads: Optional[int] = None):
    """(saw, bridge, hs, end) integer profiles, prefix-parallel."""
    nt = thread_count(threads)
    d, steps = D.d, D.steps
    if nt <= 1 or n_max < 2:
        return kernels.saw_profiles(d, steps, n_max)
    base = kernels.saw_profiles(d, steps, 1)
    prefixes = [(a, b) for a in steps for b in steps]
    with ThreadPoolExecutor(max_workers=nt) as ex:
        parts = list(ex.map(
            lambda p: kernels.saw_profiles(d, steps, n_max, p), prefixes))
    merged = []
    for i in range(4):
        chunk = [base[i]] + [p[i] for p in parts]
        merged.append(_merge([c for c in chunk if c is not None]))
    return tuple(merged)


# ---------------------------------------------------------------------------
# visitor-style enumeration


def enumerate_walks(P: ModelParams, n_max: int, cls: str = "saw",
                    visitor: Callable[[Walk], None] = None) -> None:
    """Visit every walk of the class up to n_max in deterministic DFS order.

    cls: 'saw', 'hs', 'bridge', 'polygon', or 'walk' (all walks, increments
    in the step support).  The visitor must be pure or synchronized.
    """
    check_cap(P.D, n_max)
    for w in iter_walks(P.D, n_max, cls):
        visitor(w)


def iter_walks(D: StepDistribution, n_max: int, cls: str = "saw"):
    check_cap(D, n_max)
    if cls == "walk":
        from ._kernel_pure import _iter_walks
        for n in range(n_max + 1):
            for verts in _iter_walks(D.d, D.steps, n, ()):
                yield Walk(tuple(verts))
        return
    for verts in kernels.saw_walks(D.d, D.steps, n_max, cls):
        yield Walk(verts)


# ---------------------------------------------------------------------------
# masses


@dataclass
class MassRow:
    n: int
    c: Fraction
    b: Fraction
    h: Fraction
    h_by_k: Dict[int, Fraction]


@dataclass
class MassTable:
    kappa: Fraction
    rows: List[MassRow]

    def c(self, n: int) -> Fraction:
        return self.rows[n].c

    def b(self, n: int) -> Fraction:
        return self.rows[n].b

    def h(self, n: int) -> Fraction:
        return self.rows[n].h


_hist_cache: Dict[tuple, tuple] = {}


def _mass_hists(D: StepDistribution, n_max: int, marked: bool,
                threads: Optional[int]):
    key = (D.spec, D.d, n_max, marked)
    if key in _hist_cache:
        return _hist_cache[key]
    saw, bridge, hs, _ = _profiles(D, n_max, threads)
    marked_hist: Dict[tuple, int] = {}
    if marked:
        for verts in kernels.saw_walks(D.d, D.steps, n_max, "hs"):
            w = Walk(verts)
            _, plaq = _pair_classes(verts)
            k = len(marked_unfold(w).marked_union)
            key2 = (w.n, k, len(plaq))
            marked_hist[key2] = marked_hist.get(key2, 0) + 1
    out = (saw, bridge, hs, marked_hist)
    _hist_cache[key] = out
    return out


def _eval_hist(hist: Dict[tuple, int], kappa: Fraction, u: Fraction,
               n_max: int) -> List[Fraction]:
    t = 1 + kappa
    out = [Fraction(0)] * (n_max + 1)
    for (n, pairs), cnt in hist.items():
        out[n] += cnt * t ** pairs * u ** n
    return out


def mass_table(P: ModelParams, n_max: int, marked: bool = True,
               threads: Optional[int] = None) -> MassTable:
    """Exact masses c_n, b_n, h_n and the marked breakdown h_n^k."""
    check_cap(P.D, n_max)
    if not P.D.uniform:
        raise ValueError("mass profiles require a uniform step distribution")
    saw, bridge, hs, marked_hist = _mass_hists(P.D, n_max, marked, threads)
    u = next(iter(P.D.support.values()))
    t = 1 + P.kappa
    cs = _eval_hist(saw, P.kappa, u, n_max)
    bs = _eval_hist(bridge, P.kappa, u, n_max)
    hss = _eval_hist(hs, P.kappa, u, n_max)
    by_k: List[Dict[int, Fraction]] = [dict() for _ in range(n_max + 1)]
    for (n, k, pairs), cnt in marked_hist.items():
        by_k[n][k] = by_k[n].get(k, Fraction(0)) + cnt * t ** pairs * u ** n
    rows = [MassRow(n=n, c=cs[n], b=bs[n], h=hss[n], h_by_k=by_k[n])
            for n in range(n_max + 1)]
    return MassTable(kappa=P.kappa, rows=rows)


# ---------------------------------------------------------------------------
# two-point coefficients


def two_point_coeffs(P: ModelParams, N: int,
                     threads: Optional[int] = None) -> SpatialSeries:
    """Coefficient of z^n at x: sum of weights of n-step SAWs from o to x."""
    check_cap(P.D, N)
    if not P.D.uniform:
        raise ValueError("two-point profiles require a uniform step distribution")
    _, _, _, end = _profiles(P.D, N, threads)
    u = next(iter(P.D.support.values()))
    t = 1 + P.kappa
    acc: Dict[Point, List[Fraction]] = {}
    for (x, n, pairs), cnt in end.items():
        row = acc.setdefault(x, [Fraction(0)] * (N + 1))
        row[n] += cnt * t ** pairs * u ** n
    out = SpatialSeries(N)
    for x, coeffs in acc.items():
        out.set(x, Series(coeffs, N))
    return out


def memory_two_point_coeffs(P: ModelParams, eta: Optional[Walk], N: int,
                            endpoint_exempt: bool = False,
                            min_length: int = 0) -> SpatialSeries:
    """Two-point coefficients with a memory as boundary condition.

    Sums the conditional weight over SAWs from the origin that avoid the
    memory's vertices except at the start (and at the final vertex when
    endpoint_exempt), keeping walks of length >= min_length.
    """
    check_cap(P.D, N)
    d, steps = P.D.d, P.D.steps
    o = (0,) * d
    if eta is not None and eta.n == 0:
        eta = None
    if eta is not None:
        last = eta.vertices[-1]
        if last != o and not eta.is_polygon():
            raise ValueError("a memory ends at the origin or is a polygon at it")
        if eta.is_polygon() and eta.vertices[0] != o:
            raise ValueError("polygon memories are rooted at the origin")
        if not (eta.is_saw() or eta.is_polygon()):
            raise ValueError("a memory is self-avoiding or a polygon")
    from ._kernel_pure import _partner_shifts, _unit_axis, _add, _edge
    shifts = _partner_shifts(d)
    axes = {s: _unit_axis(s) for s in steps}
    eta_vs = set(eta.vertices) - {o} if eta is not None else set()
    eta_edges = set(eta.unit_edges()) if eta is not None else set()
    u = next(iter(P.D.support.values()))
    t = 1 + P.kappa
    acc: Dict[Point, List[Fraction]] = {}

    verts = [o]
    vset = {o}
    eset = set()

    def record(n, weight_exp):
        if n < min_length:
            return
        row = acc.setdefault(verts[-1], [Fraction(0)] * (N + 1))
        row[n] += t ** weight_exp * u ** n

    def rec(n, wexp):
        record(n, wexp)
        if n == N:
            return
        for s in steps:
            v = _add(verts[-1], s)
            if v in vset:
                continue
            in_eta = v in eta_vs
            if in_eta and not endpoint_exempt:
                continue
            a = axes[s]
            delta = 0
            if a >= 0:
                e = _edge(verts[-1], v)
                for sh in shifts[a]:
                    f = (_add(e[0], sh), _add(e[1], sh))
                    if f in eset:
                        delta += 1
                    if f in eta_edges:
                        delta += 1
                eset.add(e)
            verts.append(v)
            vset.add(v)
            if in_eta:
                record(n + 1, wexp + delta)  # may end on eta, not continue
            else:
                rec(n + 1, wexp + delta)
            verts.pop()
            vset.remove(v)
            if a >= 0:
                eset.remove(_edge(verts[-1], v))

    rec(0, 0)
    out = SpatialSeries(N)
    for x, coeffs in acc.items():
        out.set(x, Series(coeffs, N))
    return out


# ---------------------------------------------------------------------------
# finite torus


def torus_susceptibility(P: ModelParams, side: int, N: int) -> Series:
    """Susceptibility polynomial on the (Z/side)^d torus, truncated at N.

    Walks live on the torus with wrapped adjacency and plaquettes; the walk
    set is finite, so for N >= side^d - 1 this is the full polynomial.
    """
    if side < 3:
        raise ValueError("torus side must be >= 3 so plaquettes embed")
    if 2 * P.D.range_bound >= side:
        raise ValueError("step range too large for this torus side")
    hist = _torus_hist(P.D, side, N)
    u = next(iter(P.D.support.values()))
    coeffs = [Fraction(0)] * (N + 1)
    t = 1 + P.kappa
    for (n, pairs), cnt in hist.items():
        coeffs[n] += cnt * t ** pairs * u ** n
    return Series(coeffs, N)


_torus_cache: Dict[tuple, Dict[tuple, int]] = {}


def _torus_hist(D: StepDistribution, side: int, n_max: int) -> Dict[tuple, int]:
    key = (D.spec, D.d, side, n_max)
    if key in _torus_cache:
        return _torus_cache[key]
    d, steps = D.d, D.steps
    from ._kernel_pure import _unit_axis, _partner_shifts
    shifts = _partner_shifts(d)
    axes = {s: _unit_axis(s) for s in steps}
    o = (0,) * d
    hist: Dict[tuple, int] = {}

    def tadd(u, v):
        return tuple((a + b) % side for a, b in zip(u, v))

    def tedge(u, v):
        return (u, v) if u <= v else (v, u)

    verts = [o]
    vset = {o}
    eset = set()

    def rec(n, pairs):
        key2 = (n, pairs)
        hist[key2] = hist.get(key2, 0) + 1
        if n == n_max:
            return
        for s in steps:
            v = tadd(verts[-1], s)
            if v in vset:
                continue
            a = axes[s]
            delta = 0
            if a >= 0:
                e = tedge(verts[-1], v)
                for sh in shifts[a]:
                    f = tedge(tadd(e[0], sh), tadd(e[1], sh))
                    if f in eset:
                        delta += 1
                eset.add(e)
            verts.append(v)
            vset.add(v)
            rec(n + 1, pairs + delta)
            verts.pop()
            vset.remove(v)
            if a >= 0:
                eset.remove(tedge(verts[-1], v))

    rec(0, 0)
    _torus_cache[key] = hist
    return hist
