"""Truncated univariate power series over Q, and the implicit branch through
the origin of y + P2(x, y) = 0.

The branch solver is the entry point of the nilpotent singularity analysis:
for a field written as (y + P2, Q2) with P2, Q2 of order >= 2 it produces the
series y = F(x) with F + P2(x, F) = O(x^order).  When P2 does not involve y
the branch is the exact polynomial -P2(x); the series code handles the
general case by fixed-point iteration, which contracts because P2 has
valuation >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import BivariatePoly
from .errors import DomainError


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients c[i] of x^i for i < truncation_order; the rest unknown."""

    coefficients: tuple
    truncation_order: int

    def __post_init__(self):
        coef = tuple(Fraction(c) for c in self.coefficients)
        if len(coef) < self.truncation_order:
            coef = coef + (Fraction(0),) * (self.truncation_order - len(coef))
        object.__setattr__(self, "coefficients", coef[: self.truncation_order])

    @classmethod
    def zero(cls, order: int):
        return cls((), order)

    @classmethod
    def from_polynomial(cls, coeffs, order: int):
        return cls(tuple(coeffs), order)

    def __getitem__(self, i: int) -> Fraction:
        if i >= self.truncation_order:
            raise IndexError("coefficient beyond truncation order")
        return self.coefficients[i]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.truncation_order, other.truncation_order)
        return self.coefficients[:n] == other.coefficients[:n]

    def __add__(self, other):
        n = min(self.truncation_order, other.truncation_order)
        return PowerSeries(tuple(a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n])), n)

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coefficients), self.truncation_order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries(tuple(c * other for c in self.coefficients), self.truncation_order)
        n = min(self.truncation_order, other.truncation_order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coefficients[:n]):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients[: n - i]):
                out[i + j] += a * b
        return PowerSeries(tuple(out), n)

    __rmul__ = __mul__

    @property
    def is_zero_to_truncation(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def valuation(self):
        for i, c in enumerate(self.coefficients):
            if c != 0:
                return i
        return None

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + float(c)
        return acc

    def __str__(self):
        parts = [f"{c}*x^{i}" for i, c in enumerate(self.coefficients) if c != 0]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(x^{self.truncation_order})"


def default_order(p: BivariatePoly, q: BivariatePoly) -> int:
    """Truncation headroom for branch/leading-term work: the relevant
    exponents are bounded by products of the input degrees."""
    return 4 * max(p.total_degree, q.total_degree, 1) + 8


def compose_poly_series(poly: BivariatePoly, f: PowerSeries) -> PowerSeries:
    """poly(x, F(x)) truncated to the order of F."""
    n = f.truncation_order
    cols = poly.as_poly_in_y()
    out = [Fraction(0)] * n
    fpow = PowerSeries.from_polynomial((Fraction(1),), n)
    for v, col in enumerate(cols):
        if v > 0:
            fpow = fpow * f
        if not col:
            continue
        for i, c in enumerate(col):
            if c == 0 or i >= n:
                continue
            for j, fc in enumerate(fpow.coefficients[: n - i]):
                out[i + j] += c * fc
    return PowerSeries(tuple(out), n)


def implicit_branch(p2: BivariatePoly, order: int) -> PowerSeries:
    """The series y = F(x) with F(0) = 0 solving y + p2(x, y) = 0.

    p2 must have no constant or linear part.  Fixed-point iteration
    F <- -p2(x, F) gains at least one correct order per pass because p2 has
    valuation >= 2, so it stabilizes within `order` passes.
    """
    if order < 2:
        raise DomainError("truncation order must be at least 2")
    if not p2.is_zero and p2.min_total_degree < 2:
        raise DomainError("branch solver needs a perturbation of order >= 2")
    f = PowerSeries.zero(order)
    for _ in range(order):
        nxt = -compose_poly_series(p2, f)
        if nxt == f:
            return nxt
        f = nxt
    return f


def leading_term(s: PowerSeries):
    """(coefficient, exponent) of the first nonzero term, or None if the
    series is zero to its truncation order."""
    v = s.valuation()
    if v is None:
        return None
    return s.coefficients[v], v
