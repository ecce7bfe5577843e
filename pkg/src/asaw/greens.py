"""Simple-random-walk two-point function: series, quadrature, asymptotics.

The generating function C_mu(x) = sum_n mu^n P[X_n = x] is evaluated three
ways: exact rational convolution powers (small orders), Fourier inversion
by tensor-product Gauss-Legendre quadrature with dyadic subdivision toward
the k = 0 singularity, and, for uniform box steps, an exact geometric
resummation whose terms factor into one-dimensional lazy-walk marginals.
The last path is what makes the d = 5 asymptotic-ratio checks feasible:
the oscillatory 5-dimensional integral is far beyond tensor quadrature,
while the resummed series converges in a few thousand cheap terms.

This module is floating-point (except the series coefficients); it feeds
no exact-identity test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from .lattice import Point, add
from .series import Series, SpatialSeries
from .stepdist import StepDistribution


def a_d(d: int) -> float:
    """Leading constant of the critical two-point function decay."""
    return d * math.gamma(d / 2 - 1) / (2 * math.pi ** (d / 2))


def mnorm(x: Point) -> float:
    return max(math.sqrt(sum(c * c for c in x)), 1.0)


@dataclass
class GreenEstimate:
    x: Point
    mu: float
    value: float
    quadrature_order: int
    error_proxy: float
    method: str = "quadrature"


# ---------------------------------------------------------------------------
# exact series


def srw_series_coeffs(D: StepDistribution, N: int) -> SpatialSeries:
    """[z^n] at x = n-step transition probability, by exact convolution."""
    out: Dict[Point, list] = {(0,) * D.d: [Fraction(1)] + [Fraction(0)] * N}
    cur: Dict[Point, Fraction] = {(0,) * D.d: Fraction(1)}
    for n in range(1, N + 1):
        nxt: Dict[Point, Fraction] = {}
        for x, p in cur.items():
            for s, q in D.support.items():
                y = add(x, s)
                nxt[y] = nxt.get(y, Fraction(0)) + p * q
        cur = nxt
        for x, p in cur.items():
            row = out.setdefault(x, [Fraction(0)] * (N + 1))
            row[n] = p
    ss = SpatialSeries(N)
    for x, coeffs in out.items():
        ss.set(x, Series(coeffs, N))
    return ss


# ---------------------------------------------------------------------------
# Fourier quadrature


def _axis_nodes(level: int, osc: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on [0, pi], dyadically refined at 0.

    Panels [pi 2^-(j+1), pi 2^-j] split further when the cosine factor
    oscillates (osc ~ |x_i|), plus the closing panel [0, pi 2^-levels].
    """
    g = 10 + 4 * level
    levels = 8 + 3 * level
    gl_x, gl_w = np.polynomial.legendre.leggauss(g)
    nodes = []
    weights = []

    def panel(a, b, parts):
        for p in range(parts):
            lo = a + (b - a) * p / parts
            hi = a + (b - a) * (p + 1) / parts
            nodes.append((gl_x + 1) * (hi - lo) / 2 + lo)
            weights.append(gl_w * (hi - lo) / 2)

    for j in range(levels):
        hi = math.pi / 2 ** j
        lo = hi / 2
        cycles = (hi - lo) * max(osc, 1) / (2 * math.pi)
        panel(lo, hi, max(1, math.ceil(cycles * 6 / g)))
    panel(0.0, math.pi / 2 ** levels, 1)
    return np.concatenate(nodes), np.concatenate(weights)


def _dhat_factors(D: StepDistribution, k: np.ndarray) -> np.ndarray:
    """Per-axis factor arrays whose combination yields the symbol of D."""
    if D.spec == "nn":
        return np.cos(k)
    L = D.range_bound
    out = np.ones_like(k)
    for j in range(1, L + 1):
        out = out + 2 * np.cos(j * k)
    return out


def _quad_estimate(D: StepDistribution, mu: float, x: Point, level: int) -> float:
    d = D.d
    per_axis = []
    for i in range(d):
        k, w = _axis_nodes(level, abs(x[i]))
        per_axis.append((k, w * np.cos(k * x[i]), _dhat_factors(D, k)))
    M = (2 * D.range_bound + 1) ** d - 1 if D.spec != "nn" else None

    # accumulate over the tensor grid, chunked on axis 0
    total = 0.0
    k0, cw0, f0 = per_axis[0]
    rest = per_axis[1:]
    shape = [len(p[0]) for p in rest]
    if D.spec == "nn":
        sum_cos = np.zeros(shape)
        for i, (k, _, f) in enumerate(rest):
            sh = [1] * len(rest)
            sh[i] = -1
            sum_cos = sum_cos + f.reshape(sh)
        wprod = np.ones(shape)
        for i, (_, cw, _) in enumerate(rest):
            sh = [1] * len(rest)
            sh[i] = -1
            wprod = wprod * cw.reshape(sh)
        for a in range(len(k0)):
            dhat = (f0[a] + sum_cos) / d
            total += cw0[a] * float(np.sum(wprod / (1.0 - mu * dhat)))
    else:
        prod_f = np.ones(shape)
        wprod = np.ones(shape)
        for i, (_, cw, f) in enumerate(rest):
            sh = [1] * len(rest)
            sh[i] = -1
            prod_f = prod_f * f.reshape(sh)
            wprod = wprod * cw.reshape(sh)
        for a in range(len(k0)):
            dhat = (f0[a] * prod_f - 1.0) / M
            total += cw0[a] * float(np.sum(wprod / (1.0 - mu * dhat)))
    return total / math.pi ** d


def green_quadrature(D: StepDistribution, mu: float, x: Point,
                     refinement: int = 2) -> GreenEstimate:
    """C_mu(x) by tensor Gauss-Legendre over [-pi, pi]^d.

    Symmetry reduces the integral to [0, pi]^d with a product of cosines;
    dyadic subdivision toward k = 0 handles the 1/(1 - mu Dhat) singularity
    at criticality (which needs d >= 3).  error_proxy is the difference
    between the last two refinement levels, not a rigorous bound.
    """
    if not 0 <= mu <= 1:
        raise ValueError("mu must lie in [0, 1]")
    if mu == 1 and D.d <= 2:
        raise ValueError("mu = 1 needs d >= 3 for an integrable singularity")
    if len(x) != D.d:
        raise ValueError("point dimension mismatch")
    coarse = _quad_estimate(D, mu, x, max(0, refinement - 1))
    value = _quad_estimate(D, mu, x, refinement)
    err = abs(value - coarse)
    if err > 4 * max(abs(value), 1e-12) and refinement >= 2:
        raise ArithmeticError("quadrature refinement is not converging")
    return GreenEstimate(x=tuple(x), mu=mu, value=value,
                         quadrature_order=refinement, error_proxy=err)


# ---------------------------------------------------------------------------
# geometric resummation for uniform box steps


def green_box_series(D: StepDistribution, mu: float, x: Point,
                     refinement: int = 2) -> GreenEstimate:
    """C_mu(x) for the uniform box family by exact geometric resummation.

    1/(1 - mu Dhat) expands in powers of the box symbol, and each power's
    Fourier inversion factors into 1-d lazy-uniform walk marginals:
    C_mu(x) = M/(M+mu) * sum_t rho^t prod_i p_t(x_i) with
    rho = mu (M+1)/(M+mu).  At mu = 1 terms decay like t^(-d/2), so for
    d >= 4 a few thousand terms give high accuracy.
    """
    if not D.spec.startswith("spread:"):
        raise ValueError("box series needs the uniform spread-out family")
    L = D.range_bound
    d = D.d
    M = (2 * L + 1) ** d - 1
    rho = mu * (M + 1) / (M + mu)
    N = 2500 * 2 ** refinement
    width = 2 * L + 1
    p = np.ones(1)  # p_0 = delta at 0; array centered at index t*L
    total = 1.0 if all(c == 0 for c in x) else 0.0
    half = total
    powr = 1.0
    for t in range(1, N + 1):
        # windowed mean of width 2L+1 via cumulative sums
        cs = np.concatenate(([0.0], np.cumsum(p)))
        newlen = len(p) + 2 * L
        idx = np.arange(newlen)
        hi = np.minimum(idx + 1, len(p))
        lo = np.maximum(idx - 2 * L, 0)
        p = (cs[hi] - cs[lo]) / width
        powr *= rho
        center = t * L
        term = powr
        for c in x:
            j = center + c
            term *= p[j] if 0 <= j < len(p) else 0.0
        total += term
        if t == N // 2:
            half = total
    value = M / (M + mu) * total
    err = abs(M / (M + mu) * (total - half))
    return GreenEstimate(x=tuple(x), mu=mu, value=value, quadrature_order=N,
                         error_proxy=err, method="box-series")


def green_value(D: StepDistribution, mu: float, x: Point,
                refinement: int = 2) -> GreenEstimate:
    """Best evaluation path for C_mu(x) given the step family and dimension."""
    if D.spec.startswith("spread:") and D.d >= 4:
        return green_box_series(D, mu, x, refinement)
    return green_quadrature(D, mu, x, refinement)


def asymptotic_ratio(D: StepDistribution, x: Point,
                     refinement: int = 2) -> Tuple[float, GreenEstimate]:
    """C_1(x) sigma^2 ||x||^(d-2) / a_d; tends to 1 as x grows (d >= 3)."""
    if D.d < 3:
        raise ValueError("asymptotic ratio needs d >= 3")
    est = green_value(D, 1.0, x, refinement)
    ratio = est.value * float(D.sigma2) * mnorm(x) ** (D.d - 2) / a_d(D.d)
    return ratio, est


# ---------------------------------------------------------------------------
# qualitative convolution decay (test support)


def convolution_decay_slope(d: int, radius: int, xs) -> list:
    """Log-log slopes of (f*f)(x) vs ||x|| for f = mnorm^-(d-2) on a box."""
    grid = np.arange(-radius, radius + 1)
    mesh = np.meshgrid(*([grid] * d), indexing="ij")
    r2 = sum(g.astype(float) ** 2 for g in mesh)
    f = np.maximum(np.sqrt(r2), 1.0) ** (-(d - 2))
    vals = []
    for x in xs:
        shifted = sum((g - c).astype(float) ** 2 for g, c in zip(mesh, x))
        g2 = np.maximum(np.sqrt(shifted), 1.0) ** (-(d - 2))
        vals.append(float(np.sum(f * g2)))
    slopes = []
    for (x1, v1), (x2, v2) in zip(zip(xs, vals), list(zip(xs, vals))[1:]):
        n1, n2 = mnorm(x1), mnorm(x2)
        slopes.append((math.log(v2) - math.log(v1)) / (math.log(n2) - math.log(n1)))
    return slopes
