"""The attraction-weighted SAW interaction and its model constants.

The weight of a walk is ``(1+kappa)^{|adj(w)|}`` times the a priori measure,
where ``|adj(w)|`` counts unordered pairs of unit edges spanning a plaquette
(the pair count, not the plaquette-set size: a 4-step polygon carries two
pairs on one plaquette).  The pair interaction U encodes the same weight
algebraically together with the self-avoidance constraint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .lattice import Point, norm_inf, plaquette_of_vertices
from .stepdist import StepDistribution, apriori_weight
from .walks import Walk, adj_pairs, cross_adj_pairs


def parse_kappa(s) -> Fraction:
    k = Fraction(s)
    if k < 0:
        raise ValueError("attraction strength kappa must be >= 0")
    return k


@dataclass(frozen=True)
class ModelParams:
    kappa: Fraction
    D: StepDistribution

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError("attraction strength kappa must be >= 0")

    @property
    def d(self) -> int:
        return self.D.d

    @property
    def k0(self) -> int:
        """Max non-flippable plaquettes between the halves of a split SAW."""
        return 2 * self.d * (self.d - 1)

    @property
    def alpha(self) -> Fraction:
        """Guaranteed disjoint fraction of any plaquette set."""
        return Fraction(1, 1 + 8 * (self.d - 1) ** 2)

    @property
    def lam(self) -> Fraction:
        """Worst-case weight cost of a single flip: p1^-2 (1+kappa)^{2d-4}."""
        return self.D.p1 ** -2 * (1 + self.kappa) ** (2 * self.d - 4)

    @property
    def z0(self) -> Fraction:
        return (1 + self.kappa) ** (-2 * (self.d - 1))


def asaw_weight(P: ModelParams, w: Walk) -> Fraction:
    """(1+kappa)^{pair count} times the a priori weight; no SAW indicator."""
    pairs, _ = adj_pairs(w)
    return (1 + P.kappa) ** pairs * apriori_weight(P.D, w)


def conditional_weight(P: ModelParams, w: Walk, eta: Optional[Walk]) -> Fraction:
    """Weight of w given memory eta: extra (1+kappa) per cross adjacency pair."""
    wt = asaw_weight(P, w)
    if eta is None or eta.n == 0:
        return wt
    return wt * (1 + P.kappa) ** cross_adj_pairs(eta, w)


def u_ij(P: ModelParams, w: Walk, i: int, j: int) -> Fraction:
    """Pair interaction: 1 on coincidence, -kappa on an adjacent edge pair.

    The attraction fires when the steps (w_i, w_{i+1}) and (w_{j-1}, w_j) are
    adjacent unit edges, i.e. both are lattice edges and the four vertices
    form a plaquette (this forces j >= i+3).  Spread-out walks can have four
    vertices forming a plaquette via diagonal steps; those are not adjacent
    edge pairs and carry no attraction.
    """
    if not (0 <= i < j <= w.n and j > i + 1):
        raise IndexError(f"invalid index pair ({i},{j}) for n={w.n}")
    vi, vj = w.vertices[i], w.vertices[j]
    if vi == vj:
        return Fraction(1)
    vi1, vj1 = w.vertices[i + 1], w.vertices[j - 1]
    if sum(abs(a - b) for a, b in zip(vi, vi1)) != 1:
        return Fraction(0)
    if sum(abs(a - b) for a, b in zip(vj, vj1)) != 1:
        return Fraction(0)
    if plaquette_of_vertices((vi, vi1, vj1, vj)) is not None:
        return -P.kappa
    return Fraction(0)


def r_kappa(P: ModelParams, x: Point) -> Fraction:
    """Small kernel dominating |U|: 1 at the origin, kappa on the inf-sphere."""
    if all(c == 0 for c in x):
        return Fraction(1)
    if norm_inf(x) == 1:
        return P.kappa
    return Fraction(0)


def interaction_product(P: ModelParams, w: Walk) -> Fraction:
    """A priori weight times the double product of (1 - U_ij) over j > i+1.

    Equals asaw_weight(w) if w is self-avoiding and 0 otherwise.
    """
    out = apriori_weight(P.D, w)
    if out == 0:
        return out
    for j in range(2, w.n + 1):
        for i in range(0, j - 1):
            u = u_ij(P, w, i, j)
            if u == 1:
                return Fraction(0)
            out *= 1 - u
    return out
