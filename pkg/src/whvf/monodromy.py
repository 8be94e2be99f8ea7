"""Monodromy of the origin for nilpotent and degenerate singular points.

Two independent devices are implemented:

* the angular test: the lowest-order angular velocity, the homogeneous
  polynomial x*Qn - y*Pn, must not change sign across a real direction if
  the origin is monodromic (a sign change produces an invariant ray /
  characteristic direction);

* Andreev's criterion for nilpotent points written as
  x' = y + P2(x, y), y' = Q2(x, y): with F the branch of y + P2 = 0
  through the origin, set f(x) = Q2(x, F(x)) = a x^alpha + ... and
  phi(x) = (dP2/dx + dQ2/dy)|_{y=F(x)} = b x^beta + ... .  The origin is
  monodromic iff a < 0, alpha = 2n - 1 is odd, and one of: beta > n - 1;
  beta = n - 1 and b^2 + 4 a n < 0; phi == 0.

Everything here is exact rational arithmetic; phi == 0 is certified exactly
when the branch is polynomial (the case for every catalog family) or when a
common factor of y + P2 and the divergence carries the branch, and is
otherwise reported as "zero to the recorded truncation order".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    BivariatePoly,
    definite_sign_class,
    gcd_bivariate,
    X,
    Y,
)
from .errors import DomainError
from .series import compose_poly_series, default_order, implicit_branch, leading_term


@dataclass(frozen=True)
class NilpotentForm:
    """x' = y + p2, y' = q2 after time rescaling (and possibly the x<->y
    swap); p2, q2 have order >= 2.  `time_scale` is the constant the field
    was divided by; a negative value means the orientation of time was
    reversed relative to the input."""

    p2: BivariatePoly
    q2: BivariatePoly
    time_scale: Fraction
    swapped: bool = False


@dataclass(frozen=True)
class NotNilpotentForm:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class AndreevData:
    """Leading data of f and phi at a nilpotent singular point."""

    a: Fraction
    alpha: int
    phi_zero: bool
    b: Fraction | None = None
    beta: int | None = None
    phi_zero_exact: bool = True
    truncation_order: int = 0

    @property
    def n(self) -> int | None:
        """alpha = 2n - 1 when alpha is odd."""
        return (self.alpha + 1) // 2 if self.alpha % 2 == 1 else None


def to_nilpotent_form(p: BivariatePoly, q: BivariatePoly):
    """Orient a nilpotent singular point as x' = y + P2, y' = Q2.

    Only a constant time rescaling and the swap (x, y) -> (y, x) are used;
    the catalog never needs a shear because coprimality rules out nilpotent
    linear parts with a nonzero diagonal.  Returns NotNilpotentForm with a
    reason when the linear part is zero, not nilpotent, or would need a
    shear.
    """
    if p.coefficient(0, 0) != 0 or q.coefficient(0, 0) != 0:
        raise DomainError("origin is not a singular point")
    j11, j12 = p.coefficient(1, 0), p.coefficient(0, 1)
    j21, j22 = q.coefficient(1, 0), q.coefficient(0, 1)
    if j11 == j12 == j21 == j22 == 0:
        return NotNilpotentForm("linear part is zero")
    if j11 + j22 != 0 or j11 * j22 - j12 * j21 != 0:
        return NotNilpotentForm("linear part is not nilpotent")
    swapped = False
    if j11 == 0 and j22 == 0 and j12 != 0 and j21 == 0:
        k = j12
    elif j11 == 0 and j22 == 0 and j21 != 0 and j12 == 0:
        p, q = q.swap_xy(), p.swap_xy()
        k = j21
        swapped = True
    else:
        return NotNilpotentForm("nilpotent linear part needs a shear, not just a swap")
    inv = Fraction(1) / k
    p2 = p * inv - Y
    q2 = q * inv
    if (not p2.is_zero and p2.min_total_degree < 2) or (not q2.is_zero and q2.min_total_degree < 2):
        return NotNilpotentForm("linear terms remain after rescaling")
    return NilpotentForm(p2=p2, q2=q2, time_scale=k, swapped=swapped)


def _substitute_x_polynomial(poly: BivariatePoly, fx: BivariatePoly) -> BivariatePoly:
    """poly(x, fx(x)) exactly, for fx a polynomial in x alone."""
    out = BivariatePoly.zero()
    cols = poly.as_poly_in_y()
    fpow = BivariatePoly.constant(1)
    for v, col in enumerate(cols):
        if v > 0:
            fpow = fpow * fx
        colp = BivariatePoly({(u, 0): c for u, c in enumerate(col) if c != 0})
        if not colp.is_zero:
            out = out + colp * fpow
    return out


def _leading_x(poly: BivariatePoly):
    if poly.is_zero:
        return None
    k = min(u for u, _ in poly.support)
    return poly.coefficient(k, 0), k


def andreev_data(p2: BivariatePoly, q2: BivariatePoly, order: int | None = None) -> AndreevData:
    """Compute (a, alpha) and (b, beta) for the nilpotent form (y + p2, q2).

    When p2 does not involve y the branch F = -p2 is an exact polynomial and
    every quantity, including phi == 0, is decided exactly.  Otherwise work
    happens in truncated series; a vanishing phi is then certified exactly
    through a common factor of y + p2 and the divergence when possible.
    """
    for g, name in ((p2, "P2"), (q2, "Q2")):
        if not g.is_zero and g.min_total_degree < 2:
            raise DomainError(f"{name} must have order >= 2")
    order = order or default_order(p2, q2)
    div = p2.diff_x() + q2.diff_y()

    y_free = all(v == 0 for _, v in p2.support)
    if y_free:
        fx = -p2
        f_poly = _substitute_x_polynomial(q2, fx)
        phi_poly = _substitute_x_polynomial(div, fx)
        lead_f = _leading_x(f_poly)
        if lead_f is None:
            raise DomainError("f vanishes identically: the origin is not isolated")
        a, alpha = lead_f
        lead_phi = _leading_x(phi_poly)
        if lead_phi is None:
            return AndreevData(a=a, alpha=alpha, phi_zero=True,
                               phi_zero_exact=True, truncation_order=order)
        b, beta = lead_phi
        return AndreevData(a=a, alpha=alpha, phi_zero=False, b=b, beta=beta,
                           truncation_order=order)

    f_series = implicit_branch(p2, order)
    f_of_x = compose_poly_series(q2, f_series)
    lt = leading_term(f_of_x)
    if lt is None:
        raise DomainError(
            f"f vanishes to truncation order {order}: origin not isolated to truncation")
    a, alpha = lt
    phi = compose_poly_series(div, f_series)
    lt_phi = leading_term(phi)
    if lt_phi is not None:
        b, beta = lt_phi
        return AndreevData(a=a, alpha=alpha, phi_zero=False, b=b, beta=beta,
                           truncation_order=order)
    # phi vanished to truncation; certify exactly if the branch sits inside a
    # common factor of y + p2 and the divergence
    exact = False
    if div.is_zero:
        exact = True
    else:
        w = gcd_bivariate(Y + p2, div)
        if w.total_degree >= 1 and compose_poly_series(w, f_series).is_zero_to_truncation:
            exact = True
    return AndreevData(a=a, alpha=alpha, phi_zero=True,
                       phi_zero_exact=exact, truncation_order=order)


def nilpotent_monodromic(d: AndreevData) -> bool:
    """Andreev's test: a < 0, alpha odd (= 2n - 1), and either beta > n - 1,
    or beta = n - 1 with b^2 + 4 a n < 0, or phi identically zero."""
    if d.a >= 0 or d.alpha % 2 == 0:
        return False
    n = d.n
    if d.phi_zero:
        return True
    if d.beta > n - 1:
        return True
    return d.beta == n - 1 and d.b * d.b + 4 * d.a * n < 0


def angular_sign_definite(p: BivariatePoly, q: BivariatePoly) -> str:
    """Sign behavior of the lowest-order angular velocity x*Qn - y*Pn.

    'changes_sign' certifies a characteristic direction crossed with odd
    multiplicity, so the origin cannot be monodromic; 'definite' certifies
    that every nearby orbit keeps turning at lowest order.
    """
    if p.is_zero and q.is_zero:
        raise DomainError("zero vector field")
    degs = [g.min_total_degree for g in (p, q) if not g.is_zero]
    n = min(degs)
    w = X * q.homogeneous_part(n) - Y * p.homogeneous_part(n)
    return definite_sign_class(w)
