"""Exact bivariate polynomial algebra over the rationals.

This is the symbolic substrate of the whole package: sparse polynomials in
(x, y) with ``Fraction`` coefficients, GCD/coprimality, homogeneous
decomposition, Lie derivatives, detection of invariant lines through the
origin, and real-linear-factor tests for homogeneous polynomials.  All
decisions made here are exact; floating point never enters this module.

Orderings: the leading term is taken in graded lexicographic order with
x > y (compare total degree, then the x-exponent).  GCDs are normalized to
primitive integer coefficients with a positive leading coefficient, so that
results are canonical and directly comparable in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from . import univariate as u1
from .errors import DomainError


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("float coefficient in exact polynomial; use Fraction")
    return Fraction(c)


class BivariatePoly:
    """Sparse bivariate polynomial: map (u, v) exponent pair -> Fraction.

    Immutable; all operators return new instances.  Zero coefficients are
    never stored, and the zero polynomial is the empty map.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for (u, v), c in terms.items():
                c = _frac(c)
                if c != 0:
                    if u < 0 or v < 0:
                        raise ValueError("negative exponent")
                    cleaned[(int(u), int(v))] = c
        object.__setattr__(self, "_terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("BivariatePoly is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): _frac(c)})

    @classmethod
    def monomial(cls, u, v, c=1):
        return cls({(u, v): _frac(c)})

    # -- basic queries -------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, u, v) -> Fraction:
        return self._terms.get((u, v), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((u + v for u, v in self._terms), default=-1)

    @property
    def min_total_degree(self) -> int:
        return min((u + v for u, v in self._terms), default=-1)

    @property
    def support(self):
        return set(self._terms)

    def is_homogeneous(self) -> bool:
        return len({u + v for u, v in self._terms}) <= 1

    def leading_term(self):
        """((u, v), coeff) maximal in graded-lex order (x > y)."""
        if self.is_zero:
            raise DomainError("leading term of the zero polynomial")
        key = max(self._terms, key=lambda e: (e[0] + e[1], e[0]))
        return key, self._terms[key]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return BivariatePoly.zero()
            return BivariatePoly({e: c * other for e, c in self._terms.items()})
        other = _coerce(other)
        out = {}
        for (u1_, v1_), c1 in self._terms.items():
            for (u2, v2), c2 in other._terms.items():
                e = (u1_ + u2, v1_ + v2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = BivariatePoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BivariatePoly.constant(other) if other != 0 else BivariatePoly.zero()
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- calculus and evaluation ---------------------------------------------

    def diff_x(self):
        return BivariatePoly({(u - 1, v): c * u for (u, v), c in self._terms.items() if u > 0})

    def diff_y(self):
        return BivariatePoly({(u, v - 1): c * v for (u, v), c in self._terms.items() if v > 0})

    def eval(self, x, y) -> Fraction:
        acc = Fraction(0)
        for (u, v), c in self._terms.items():
            acc += c * Fraction(x) ** u * Fraction(y) ** v
        return acc

    def eval_float(self, x: float, y: float) -> float:
        acc = 0.0
        for (u, v), c in self._terms.items():
            acc += float(c) * x**u * y**v
        return acc

    def homogeneous_part(self, d: int):
        return BivariatePoly({e: c for e, c in self._terms.items() if e[0] + e[1] == d})

    def swap_xy(self):
        return BivariatePoly({(v, u): c for (u, v), c in self._terms.items()})

    def subs_scaled(self, cx, cy):
        """p(cx * x, cy * y) for rational scalars."""
        cx, cy = _frac(cx), _frac(cy)
        return BivariatePoly({(u, v): c * cx**u * cy**v for (u, v), c in self._terms.items()})

    # -- conversions ---------------------------------------------------------

    def as_poly_in_y(self):
        """Coefficients in y: list indexed by v of dense x-polynomials."""
        if self.is_zero:
            return []
        vmax = max(v for _, v in self._terms)
        out = [[] for _ in range(vmax + 1)]
        for v in range(vmax + 1):
            umax = max((u for (u, vv) in self._terms if vv == v), default=-1)
            col = [Fraction(0)] * (umax + 1)
            for (u, vv), c in self._terms.items():
                if vv == v:
                    col[u] = c
            out[v] = u1.trim(col)
        return out

    @classmethod
    def from_poly_in_y(cls, cols):
        terms = {}
        for v, col in enumerate(cols):
            for u, c in enumerate(col):
                if c != 0:
                    terms[(u, v)] = c
        return cls(terms)

    def float_arrays(self):
        """(u_exps, v_exps, coeffs) numpy arrays for the numeric kernels."""
        import numpy as np

        items = sorted(self._terms.items(), key=lambda t: (t[0][0] + t[0][1], t[0][0]))
        us = np.array([e[0] for e, _ in items], dtype=np.int64)
        vs = np.array([e[1] for e, _ in items], dtype=np.int64)
        cs = np.array([float(c) for _, c in items], dtype=np.float64)
        return us, vs, cs

    def __repr__(self):
        return f"BivariatePoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _coerce(v) -> BivariatePoly:
    if isinstance(v, BivariatePoly):
        return v
    if isinstance(v, (int, Fraction)):
        return BivariatePoly.constant(v) if v != 0 else BivariatePoly.zero()
    raise TypeError(f"cannot coerce {type(v).__name__} to BivariatePoly")


X = BivariatePoly.monomial(1, 0)
Y = BivariatePoly.monomial(0, 1)
ONE = BivariatePoly.constant(1)


def format_poly(p: BivariatePoly) -> str:
    """Render with explicit '*' and '^', parse/print round-trip safe."""
    if p.is_zero:
        return "0"
    parts = []
    for (u, v), c in sorted(p._terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
        factors = []
        if u == 1:
            factors.append("x")
        elif u > 1:
            factors.append(f"x^{u}")
        if v == 1:
            factors.append("y")
        elif v > 1:
            factors.append(f"y^{v}")
        mag = abs(c)
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        term = "*".join(factors)
        parts.append(("- " if c < 0 else "+ ") + term)
    body = " ".join(parts)
    return body[2:] if body.startswith("+ ") else "-" + body[2:]


# ---------------------------------------------------------------------------
# Division and GCD
# ---------------------------------------------------------------------------

def divmod_bivariate(p: BivariatePoly, d: BivariatePoly):
    """Single-divisor multivariate division in graded-lex order.

    Returns (q, r) with p = q*d + r and no term of r divisible by the
    leading term of d; r == 0 certifies exact divisibility.
    """
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    (du, dv), dc = d.leading_term()
    q = {}
    r = {}
    work = dict(p._terms)
    while work:
        e = max(work, key=lambda t: (t[0] + t[1], t[0]))
        c = work.pop(e)
        if e[0] >= du and e[1] >= dv:
            qe = (e[0] - du, e[1] - dv)
            qc = c / dc
            q[qe] = q.get(qe, Fraction(0)) + qc
            for (u, v), dcc in d._terms.items():
                ee = (qe[0] + u, qe[1] + v)
                s = work.get(ee, Fraction(0)) - qc * dcc
                if ee == e:
                    continue  # cancelled exactly by construction
                if s == 0:
                    work.pop(ee, None)
                else:
                    work[ee] = s
        else:
            r[e] = c
    return BivariatePoly(q), BivariatePoly(r)


def divides(d: BivariatePoly, p: BivariatePoly) -> bool:
    return divmod_bivariate(p, d)[1].is_zero


def _content_in_x(cols):
    """GCD over Q[x] of the y-coefficients of a bivariate polynomial."""
    g = []
    for col in cols:
        g = u1.gcd_poly(g, col)
        if u1.degree(g) == 0:
            return g
    return g


def _primitive_in_y(cols):
    cont = _content_in_x(cols)
    if u1.degree(cont) <= 0:
        return cols, cont
    return [u1.quo(col, cont) if col else [] for col in cols], cont


def _pseudo_rem_y(f_cols, g_cols):
    """Pseudo-remainder of f by g as polynomials in y over Q[x]."""
    f = [list(c) for c in f_cols]
    n = len(g_cols) - 1
    lc = g_cols[-1]
    while len(f) - 1 >= n and any(f):
        while f and not f[-1]:
            f.pop()
        if len(f) - 1 < n:
            break
        m = len(f) - 1
        top = f[-1]
        # f <- lc*f - top * y^(m-n) * g
        f = [u1.mul(lc, c) for c in f]
        for i, gc in enumerate(g_cols):
            idx = m - n + i
            f[idx] = u1.sub(f[idx], u1.mul(top, gc))
        while f and not f[-1]:
            f.pop()
    return f


def normalize_gcd(p: BivariatePoly) -> BivariatePoly:
    """Canonical scaling: primitive integer coefficients, positive graded-lex
    leading coefficient."""
    if p.is_zero:
        return p
    den = 1
    for c in p._terms.values():
        den = den * c.denominator // int_gcd(den, c.denominator)
    num = 0
    for c in p._terms.values():
        num = int_gcd(num, abs(int(c * den)))
    scalef = Fraction(den, num)
    _, lc = p.leading_term()
    if lc < 0:
        scalef = -scalef
    return p * scalef


def gcd_bivariate(p: BivariatePoly, q: BivariatePoly) -> BivariatePoly:
    """GCD in Q[x, y], canonically normalized (see normalize_gcd).

    Computed as a primitive polynomial remainder sequence in y over Q[x],
    with the content (a univariate GCD in x) handled separately.
    """
    if p.is_zero and q.is_zero:
        raise DomainError("gcd(0, 0) is undefined")
    if p.is_zero:
        return normalize_gcd(q)
    if q.is_zero:
        return normalize_gcd(p)

    pc = p.as_poly_in_y()
    qc = q.as_poly_in_y()
    pp, cont_p = _primitive_in_y(pc)
    qp, cont_q = _primitive_in_y(qc)
    cont = u1.gcd_poly(cont_p, cont_q)

    f, g = pp, qp
    if len(f) < len(g):
        f, g = g, f
    while any(g):
        r = _pseudo_rem_y(f, g)
        r = [u1.trim(c) for c in r]
        while r and not r[-1]:
            r.pop()
        f, g = g, _primitive_in_y(r)[0] if r else []
    if len(f) == 1:
        # gcd in y is a content-free element of Q[x]; primitive => constant
        gcd_y = BivariatePoly.constant(1)
    else:
        gcd_y = BivariatePoly.from_poly_in_y(f)
    cont_poly = BivariatePoly.from_poly_in_y([cont]) if cont else BivariatePoly.constant(1)
    return normalize_gcd(gcd_y * cont_poly)


def is_coprime(p: BivariatePoly, q: BivariatePoly) -> bool:
    return gcd_bivariate(p, q).total_degree == 0


# ---------------------------------------------------------------------------
# Structure operations
# ---------------------------------------------------------------------------

def homogeneous_parts(p: BivariatePoly):
    """Ordered list of (degree, part); parts sum back to p exactly."""
    by_deg = {}
    for (u, v), c in p._terms.items():
        by_deg.setdefault(u + v, {})[(u, v)] = c
    return [(d, BivariatePoly(t)) for d, t in sorted(by_deg.items())]


def lie_derivative(h: BivariatePoly, p: BivariatePoly, q: BivariatePoly) -> BivariatePoly:
    """Derivative of h along the vector field (p, q): p*dh/dx + q*dh/dy."""
    return p * h.diff_x() + q * h.diff_y()


def is_first_integral(h: BivariatePoly, p: BivariatePoly, q: BivariatePoly) -> bool:
    return h.total_degree >= 1 and lie_derivative(h, p, q).is_zero


def real_linear_factor_exists(h: BivariatePoly) -> bool:
    """Whether a homogeneous h has a real linear factor a*x + b*y.

    Decided exactly: x | h by inspection, remaining directions by a Sturm
    count on the slice h(1, t).
    """
    if h.is_zero:
        raise DomainError("zero polynomial has no factor structure")
    if not h.is_homogeneous():
        raise DomainError("real_linear_factor_exists requires a homogeneous polynomial")
    if all(u >= 1 for u, _ in h._terms):
        return True  # x divides h
    slice_t = _slice_y_over_x(h)
    return u1.count_real_roots(slice_t) > 0


def _slice_y_over_x(h: BivariatePoly):
    """h(1, t) as a dense polynomial in t = y/x."""
    deg = max((v for _, v in h._terms), default=0)
    out = [Fraction(0)] * (deg + 1)
    for (_, v), c in h._terms.items():
        out[v] += c
    return u1.trim(out)


def definite_sign_class(h: BivariatePoly) -> str:
    """Sign behavior of a homogeneous h on the punctured plane.

    Returns one of 'definite', 'changes_sign', 'semi_definite',
    'identically_zero'.  h changes sign iff it has a real linear factor of
    odd multiplicity; with only even-multiplicity real factors it is
    semi-definite (touches zero without crossing).
    """
    if h.is_zero:
        return "identically_zero"
    if not h.is_homogeneous():
        raise DomainError("sign classification requires a homogeneous polynomial")
    x_mult = min(u for u, _ in h._terms)
    if x_mult % 2 == 1:
        return "changes_sign"
    slice_t = _slice_y_over_x(BivariatePoly({(u - x_mult, v): c for (u, v), c in h._terms.items()}))
    odd_part = [Fraction(1)]
    any_real = False
    for fac, mult in u1.squarefree_decomposition(slice_t):
        if u1.count_real_roots(fac) > 0:
            any_real = True
            if mult % 2 == 1:
                odd_part = u1.mul(odd_part, fac)
    if u1.degree(odd_part) > 0 and u1.count_real_roots(odd_part) > 0:
        return "changes_sign"
    if any_real or x_mult > 0:
        return "semi_definite"
    return "definite"


# ---------------------------------------------------------------------------
# Invariant lines through the origin
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LineThroughOrigin:
    """The line a*x + b*y = 0 with (a, b) primitive integers, first nonzero
    entry positive."""

    a: int
    b: int

    def __post_init__(self):
        if (self.a, self.b) == (0, 0):
            raise ValueError("degenerate line")
        g = int_gcd(abs(self.a), abs(self.b))
        a, b = self.a // g, self.b // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_slope(cls, k: Fraction):
        # y = k*x  <=>  k*x - y = 0; normalize via the constructor
        return cls(k.numerator, -k.denominator)

    def poly(self) -> BivariatePoly:
        return BivariatePoly({(1, 0): self.a, (0, 1): self.b})

    def __str__(self):
        if self.b == 0:
            return "x = 0"
        if self.a == 0:
            return "y = 0"
        return f"y = {Fraction(-self.a, self.b)}*x"


@dataclass(frozen=True)
class IrrationalSlopeLine:
    """An invariant line y = k*x whose slope is irrational, given by a Sturm
    isolating interval lo < k < hi containing exactly one root."""

    lo: Fraction
    hi: Fraction

    def __str__(self):
        return f"y = k*x with k in ({self.lo}, {self.hi})"


@dataclass(frozen=True)
class InvariantLines:
    lines: tuple
    irrational: tuple
    every_line: bool = False

    def __bool__(self):
        return self.every_line or bool(self.lines) or bool(self.irrational)

    @property
    def count(self):
        return len(self.lines) + len(self.irrational)


def invariant_lines_through_origin(p: BivariatePoly, q: BivariatePoly) -> InvariantLines:
    """All real invariant lines of (p, q) through the origin.

    The line a*x + b*y = 0 is invariant iff (a*x + b*y) divides a*p + b*q.
    x = 0 is checked by divisibility; lines y = k*x reduce to the common
    roots of the x-coefficients of (q - k*p)(x, k*x), found exactly via
    rational-root extraction and Sturm isolation.
    """
    if p.is_zero and q.is_zero:
        raise DomainError("invariant lines of the zero field")
    lines = []
    if p.is_zero or divides(X, p):
        lines.append(LineThroughOrigin(1, 0))

    # (q - k*p)(x, k*x) as a polynomial in x whose coefficients live in Q[k]
    coeff_in_k = {}
    for (u, v), c in q._terms.items():
        col = coeff_in_k.setdefault(u + v, {})
        col[v] = col.get(v, Fraction(0)) + c
    for (u, v), c in p._terms.items():
        col = coeff_in_k.setdefault(u + v, {})
        col[v + 1] = col.get(v + 1, Fraction(0)) - c
    polys = []
    for _, col in sorted(coeff_in_k.items()):
        dense = [Fraction(0)] * (max(col) + 1)
        for kk, c in col.items():
            dense[kk] = c
        polys.append(u1.trim(dense))

    g = []
    for f in polys:
        g = u1.gcd_poly(g, f)
        if u1.degree(g) == 0:
            break
    if u1.is_zero(g):
        # q - k*p vanishes identically for every k: radial field
        return InvariantLines(lines=tuple(lines), irrational=(), every_line=True)
    if u1.degree(g) > 0:
        rem = g
        for root, _ in u1.rational_roots(g):
            lines.append(LineThroughOrigin.from_slope(root))
            while u1.eval_at(rem, root) == 0:
                rem = u1.quo(rem, [-root, Fraction(1)])
        irr = [IrrationalSlopeLine(lo, hi)
               for lo, hi in u1.isolate_irrational_roots(u1.squarefree_part(rem))]
    else:
        irr = []
    lines = sorted(set(lines), key=lambda L: (L.a, L.b))
    return InvariantLines(lines=tuple(lines), irrational=tuple(irr))


def line_is_invariant(line: LineThroughOrigin, p: BivariatePoly, q: BivariatePoly) -> bool:
    """Direct certificate: (a*x + b*y) | (a*p + b*q)."""
    comb = p * Fraction(line.a) + q * Fraction(line.b)
    if comb.is_zero:
        return True
    return divides(line.poly(), comb)


# ---------------------------------------------------------------------------
# Linear changes of variables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mat2:
    """2x2 rational matrix ((a, b), (c, d))."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for f in ("a", "b", "c", "d"):
            object.__setattr__(self, f, _frac(getattr(self, f)))

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        dt = self.det
        if dt == 0:
            raise DomainError("singular matrix")
        return Mat2(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def apply(self, x, y):
        return self.a * x + self.b * y, self.c * x + self.d * y


def substitute_linear(p: BivariatePoly, m: Mat2) -> BivariatePoly:
    """p composed with (x, y) -> m @ (x, y)."""
    if m.det == 0:
        raise DomainError("singular change of variables")
    nx = BivariatePoly({(1, 0): m.a, (0, 1): m.b})
    ny = BivariatePoly({(1, 0): m.c, (0, 1): m.d})
    out = BivariatePoly.zero()
    xu = {0: ONE}
    yv = {0: ONE}
    umax = max((u for u, _ in p._terms), default=0)
    vmax = max((v for _, v in p._terms), default=0)
    for k in range(1, umax + 1):
        xu[k] = xu[k - 1] * nx
    for k in range(1, vmax + 1):
        yv[k] = yv[k - 1] * ny
    for (u, v), c in p._terms.items():
        out = out + xu[u] * yv[v] * c
    return out


def transform_system(p: BivariatePoly, q: BivariatePoly, m: Mat2):
    """Push the field (p, q) through the substitution (x, y) = m @ (u, v).

    Returns the field in the new coordinates: m^-1 @ (p, q) o m.  Linear
    equivalence preserves centers, invariant lines and homogeneity.
    """
    minv = m.inverse()
    pm = substitute_linear(p, m)
    qm = substitute_linear(q, m)
    return (pm * minv.a + qm * minv.b, pm * minv.c + qm * minv.d)
