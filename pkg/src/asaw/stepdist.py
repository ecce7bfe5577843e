"""Step distributions with exact rational probabilities.

Two built-in families: nearest-neighbour, and spread-out uniform on the box
``{x != o : ||x||_inf <= L}`` (the rational piecewise-constant shape).  Both
are uniform on their support, which the enumeration kernels exploit; the
``uniform`` flag records this.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Tuple

from .lattice import Point, norm_inf
from .walks import Walk


@dataclass(frozen=True)
class StepDistribution:
    d: int
    support: Dict[Point, Fraction]
    p1: Fraction
    sigma2: Fraction
    range_bound: int
    uniform: bool
    spec: str = field(default="", compare=False)

    @property
    def steps(self) -> Tuple[Point, ...]:
        """Support in canonical (sorted) order."""
        return tuple(sorted(self.support))

    def prob(self, x: Point) -> Fraction:
        return self.support.get(x, Fraction(0))

    def __hash__(self):
        return hash((self.d, self.spec, self.range_bound))


def _validate(support: Dict[Point, Fraction], d: int) -> None:
    total = sum(support.values())
    if total != 1:
        raise ValueError(f"step probabilities sum to {total}, not 1")
    for x, p in support.items():
        if p <= 0:
            raise ValueError("step probabilities must be positive")
        if len(x) != d:
            raise ValueError("support point of wrong dimension")
        if all(c == 0 for c in x):
            raise ValueError("the origin cannot carry step mass")
    for x in support:
        for axis in range(d):
            refl = list(x)
            refl[axis] = -refl[axis]
            if support[tuple(refl)] != support[x]:
                raise ValueError("step distribution not reflection invariant")
        for perm in _axis_swaps(d):
            y = tuple(x[i] for i in perm)
            if support[y] != support[x]:
                raise ValueError("step distribution not permutation invariant")


def _axis_swaps(d: int):
    # Transpositions generate the permutation group; checking them suffices.
    for i in range(d - 1):
        perm = list(range(d))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        yield tuple(perm)


def _finish(d: int, support: Dict[Point, Fraction], uniform: bool,
            spec: str) -> StepDistribution:
    _validate(support, d)
    e1 = tuple([1] + [0] * (d - 1))
    p1 = support.get(e1, Fraction(0))
    if p1 <= 0:
        raise ValueError("D(e1) = p1 must be positive")
    sigma2 = sum(p * sum(c * c for c in x) for x, p in support.items())
    rb = max(norm_inf(x) for x in support)
    return StepDistribution(d=d, support=support, p1=p1, sigma2=sigma2,
                            range_bound=rb, uniform=uniform, spec=spec)


def make_nearest_neighbour(d: int) -> StepDistribution:
    """Uniform on the 2d unit vectors; p1 = 1/(2d), sigma^2 = 1."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    p = Fraction(1, 2 * d)
    support: Dict[Point, Fraction] = {}
    for axis in range(d):
        for s in (1, -1):
            x = [0] * d
            x[axis] = s
            support[tuple(x)] = p
    return _finish(d, support, uniform=True, spec="nn")


def make_spread_out(d: int, L: int, shape: str = "uniform") -> StepDistribution:
    """Spread-out family; only the uniform shape keeps exact rationals."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if L < 1:
        raise ValueError("spread-out parameter L must be >= 1")
    if shape != "uniform":
        raise ValueError(f"unsupported shape {shape!r}; exact mode is uniform only")
    count = (2 * L + 1) ** d - 1
    p = Fraction(1, count)
    support = {x: p for x in product(range(-L, L + 1), repeat=d)
               if any(c != 0 for c in x)}
    return _finish(d, support, uniform=True, spec=f"spread:L={L},shape=uniform")


def parse_dist_spec(spec: str, d: int) -> StepDistribution:
    """Parse a CLI distribution spec: ``nn`` or ``spread:L=<int>,shape=uniform``."""
    spec = spec.strip()
    if spec == "nn":
        return make_nearest_neighbour(d)
    if spec.startswith("spread:"):
        L = None
        shape = "uniform"
        for item in spec[len("spread:"):].split(","):
            key, _, val = item.partition("=")
            if key == "L":
                L = int(val)
            elif key == "shape":
                shape = val
            else:
                raise ValueError(f"unknown spread-out option {key!r}")
        if L is None:
            raise ValueError("spread-out spec needs L=<int>")
        return make_spread_out(d, L, shape)
    raise ValueError(f"unknown distribution spec {spec!r}")


def apriori_weight(D: StepDistribution, w: Walk) -> Fraction:
    """Product of D over the increments of w; 1 for the zero-step walk.

    An increment outside the support gives weight 0 (such walks carry no
    mass; this is not an error).
    """
    out = Fraction(1)
    for s in w.steps():
        p = D.support.get(s)
        if p is None:
            return Fraction(0)
        out *= p
    return out
