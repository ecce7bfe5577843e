"""Truncated power series in z with exact rational coefficients.

Series hold N+1 coefficients; all arithmetic truncates at order N.  A
SpatialSeries maps lattice points to Series (finite support) and supports
the spatial-and-series convolution used by the expansion identities.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional

from .lattice import Point, add


class Series:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Fraction], order: int):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > order + 1:
            raise ValueError("too many coefficients for the truncation order")
        cs.extend(Fraction(0) for _ in range(order + 1 - len(cs)))
        self.coeffs = cs
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls([Fraction(1)], order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Series) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        return f"Series({self.coeffs!r}, order={self.order})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "Series") -> "Series":
        order = min(self.order, other.order)
        return Series([a + b for a, b in
                       zip(self.coeffs[:order + 1], other.coeffs[:order + 1])],
                      order)

    def __sub__(self, other: "Series") -> "Series":
        order = min(self.order, other.order)
        return Series([a - b for a, b in
                       zip(self.coeffs[:order + 1], other.coeffs[:order + 1])],
                      order)

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs], self.order)

    def scale(self, c) -> "Series":
        c = Fraction(c)
        return Series([c * a for a in self.coeffs], self.order)

    def shift(self, k: int) -> "Series":
        """Multiply by z^k."""
        return Series([Fraction(0)] * k + self.coeffs[:self.order + 1 - k],
                      self.order)

    def __mul__(self, other: "Series") -> "Series":
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[:order + 1]):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs[:order + 1 - i]):
                if b != 0:
                    out[i + j] += a * b
        return Series(out, order)

    def eval(self, z: Fraction) -> Fraction:
        z = Fraction(z)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Series":
        return Series([n * c for n, c in enumerate(self.coeffs)][1:],
                      self.order - 1)


class SpatialSeries:
    __slots__ = ("entries", "order")

    def __init__(self, order: int, entries: Optional[Dict[Point, Series]] = None):
        self.order = order
        self.entries: Dict[Point, Series] = {}
        if entries:
            for x, s in entries.items():
                self.set(x, s)

    def set(self, x: Point, s: Series) -> None:
        if s.order != self.order:
            raise ValueError("order mismatch")
        if not s.is_zero():
            self.entries[tuple(x)] = s

    def get(self, x: Point) -> Series:
        return self.entries.get(tuple(x), Series.zero(self.order))

    def coeff(self, x: Point, n: int) -> Fraction:
        s = self.entries.get(tuple(x))
        return s.coeffs[n] if s is not None else Fraction(0)

    def support(self):
        return sorted(self.entries)

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.entries.values())

    def __add__(self, other: "SpatialSeries") -> "SpatialSeries":
        order = min(self.order, other.order)
        out = SpatialSeries(order)
        for x in set(self.entries) | set(other.entries):
            out.set(x, Series(self.get(x).coeffs[:order + 1], order)
                    + Series(other.get(x).coeffs[:order + 1], order))
        return out

    def __sub__(self, other: "SpatialSeries") -> "SpatialSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "SpatialSeries":
        out = SpatialSeries(self.order)
        for x, s in self.entries.items():
            out.set(x, s.scale(c))
        return out

    def shift(self, k: int) -> "SpatialSeries":
        out = SpatialSeries(self.order)
        for x, s in self.entries.items():
            out.set(x, s.shift(k))
        return out

    def convolve(self, other: "SpatialSeries") -> "SpatialSeries":
        """Spatial convolution with series multiplication, truncated."""
        order = min(self.order, other.order)
        acc: Dict[Point, list] = {}
        for x, sx in self.entries.items():
            for y, sy in other.entries.items():
                target = add(x, y)
                prod = Series(sx.coeffs[:order + 1], order) * \
                    Series(sy.coeffs[:order + 1], order)
                if target in acc:
                    acc[target] = [a + b for a, b in zip(acc[target], prod.coeffs)]
                else:
                    acc[target] = prod.coeffs
        out = SpatialSeries(order)
        for x, cs in acc.items():
            out.set(x, Series(cs, order))
        return out

    def sum_over_x(self) -> Series:
        acc = Series.zero(self.order)
        for s in self.entries.values():
            acc = acc + s
        return acc

    def max_abs_coeff(self) -> Fraction:
        best = Fraction(0)
        for s in self.entries.values():
            for c in s.coeffs:
                if abs(c) > best:
                    best = abs(c)
        return best


def delta_series(d: int, order: int) -> SpatialSeries:
    out = SpatialSeries(order)
    out.set((0,) * d, Series.one(order))
    return out
