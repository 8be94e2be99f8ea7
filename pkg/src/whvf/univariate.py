"""Exact univariate polynomial arithmetic over the rationals.

Polynomials are dense coefficient lists of ``fractions.Fraction``, index =
exponent (``[c0, c1, c2]`` is ``c0 + c1*x + c2*x**2``).  The zero polynomial
is the empty list.  Everything here is exact; no floating point.

Provides the root-counting machinery the symbolic layer relies on: Sturm
sequences, square-free decomposition (Yun), rational-root extraction and
isolating intervals for the remaining real roots.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import DomainError

Poly1 = list  # list[Fraction], index = exponent


def trim(f: Poly1) -> Poly1:
    while f and f[-1] == 0:
        f = f[:-1]
    return f


def degree(f: Poly1) -> int:
    """Degree of f, with deg 0 = -1 by convention."""
    return len(f) - 1


def is_zero(f: Poly1) -> bool:
    return not f


def constant(c) -> Poly1:
    c = Fraction(c)
    return [c] if c != 0 else []


def add(f: Poly1, g: Poly1) -> Poly1:
    n = max(len(f), len(g))
    out = [Fraction(0)] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += c
    return trim(out)


def neg(f: Poly1) -> Poly1:
    return [-c for c in f]


def sub(f: Poly1, g: Poly1) -> Poly1:
    return add(f, neg(g))


def mul(f: Poly1, g: Poly1) -> Poly1:
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def scale(f: Poly1, c) -> Poly1:
    c = Fraction(c)
    if c == 0:
        return []
    return [a * c for a in f]


def divmod_poly(f: Poly1, g: Poly1) -> tuple[Poly1, Poly1]:
    """Euclidean division over Q: f = q*g + r with deg r < deg g."""
    if is_zero(g):
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    dg, lg = degree(g), g[-1]
    while not is_zero(r) and degree(r) >= dg:
        k = degree(r) - dg
        c = r[-1] / lg
        q[k] = c
        for i in range(len(g)):
            r[i + k] -= c * g[i]
        r = trim(r)
    return trim(q), r


def rem(f: Poly1, g: Poly1) -> Poly1:
    return divmod_poly(f, g)[1]


def quo(f: Poly1, g: Poly1) -> Poly1:
    q, r = divmod_poly(f, g)
    if not is_zero(r):
        raise DomainError("inexact polynomial division")
    return q


def monic(f: Poly1) -> Poly1:
    if is_zero(f):
        return []
    lc = f[-1]
    return [c / lc for c in f]


def gcd_poly(f: Poly1, g: Poly1) -> Poly1:
    """Monic GCD over Q (Euclid); gcd(0, 0) = 0."""
    f, g = trim(list(f)), trim(list(g))
    while not is_zero(g):
        f, g = g, rem(f, g)
    return monic(f)


def diff(f: Poly1) -> Poly1:
    return trim([i * c for i, c in enumerate(f)][1:])


def eval_at(f: Poly1, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def clear_denominators(f: Poly1) -> list[int]:
    """Scale f by a positive rational into a primitive integer polynomial.

    Returns integer coefficients with gcd 1; sign of the leading
    coefficient is preserved.  Zero maps to [].
    """
    if is_zero(f):
        return []
    den = 1
    for c in f:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    g = 0
    for c in ints:
        g = int_gcd(g, abs(c))
    return [c // g for c in ints]


# ---------------------------------------------------------------------------
# Sturm sequences and real-root counting
# ---------------------------------------------------------------------------

def sturm_sequence(f: Poly1) -> list[Poly1]:
    """Sturm chain f, f', -rem(...), ... for a square-free f."""
    seq = [trim(list(f)), diff(f)]
    while not is_zero(seq[-1]):
        seq.append(neg(rem(seq[-2], seq[-1])))
    return seq[:-1]


def _variations(values) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(seq, x) -> int:
    return _variations(eval_at(p, x) for p in seq)


def _variations_at_inf(seq, sign: int) -> int:
    # sign of p at +/-inf is lc * sign**deg
    vals = []
    for p in seq:
        if is_zero(p):
            continue
        lc = p[-1]
        vals.append(lc if sign > 0 or degree(p) % 2 == 0 else -lc)
    return _variations(vals)


def count_real_roots(f: Poly1, lo=None, hi=None) -> int:
    """Number of distinct real roots of f in (lo, hi); None means +/-inf.

    Endpoints must not be roots when given.
    """
    if is_zero(f):
        raise DomainError("root count of the zero polynomial")
    s = squarefree_part(f)
    if degree(s) <= 0:
        return 0
    seq = sturm_sequence(s)
    va = _variations_at_inf(seq, -1) if lo is None else _variations_at(seq, lo)
    vb = _variations_at_inf(seq, +1) if hi is None else _variations_at(seq, hi)
    return va - vb


def cauchy_bound(f: Poly1) -> Fraction:
    """B such that all real roots lie in (-B, B)."""
    f = trim(list(f))
    if degree(f) <= 0:
        return Fraction(1)
    lc = abs(f[-1])
    return Fraction(1) + max(abs(c) for c in f[:-1]) / lc


def squarefree_part(f: Poly1) -> Poly1:
    g = gcd_poly(f, diff(f))
    if degree(g) <= 0:
        return monic(f)
    return monic(quo(f, g))


def squarefree_decomposition(f: Poly1) -> list[tuple[Poly1, int]]:
    """Yun's algorithm: f = c * prod(a_i ** i) with a_i square-free, coprime.

    Returns the nonconstant (a_i, i) pairs, each a_i monic.
    """
    f = trim(list(f))
    if degree(f) <= 0:
        return []
    d = diff(f)
    g = gcd_poly(f, d)
    if degree(g) == 0:
        return [(monic(f), 1)]
    out = []
    w = quo(f, g)
    y = quo(d, g)
    z = sub(y, diff(w))
    i = 1
    while degree(w) > 0:
        gi = gcd_poly(w, z)
        if degree(gi) > 0:
            out.append((monic(gi), i))
        w = quo(w, gi)
        y = quo(z, gi)
        z = sub(y, diff(w))
        i += 1
    return out


# ---------------------------------------------------------------------------
# Root extraction
# ---------------------------------------------------------------------------

def _divisors(n: int, cap: int = 200000) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
            if len(out) > cap:
                raise DomainError("coefficient too composite for rational root search")
        d += 1
    return out


def rational_roots(f: Poly1) -> list[tuple[Fraction, int]]:
    """All rational roots of f with multiplicities, by the rational root test."""
    f = trim(list(f))
    if degree(f) <= 0:
        return []
    roots = []
    # x = 0 first
    k = 0
    while k < len(f) and f[k] == 0:
        k += 1
    if k > 0:
        roots.append((Fraction(0), k))
        f = f[k:]
    ints = clear_denominators(f)
    if len(ints) <= 1:
        return roots
    cands = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    for r in sorted(cands):
        if eval_at(f, r) == 0:
            m = 0
            while eval_at(f, r) == 0:
                f = quo(f, [-r, Fraction(1)])
                m += 1
            roots.append((r, m))
    return roots


def isolate_irrational_roots(f: Poly1) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals (lo, hi) for the real roots of a square-free f
    known to have no rational roots: one root per interval, exactly.
    """
    if degree(f) <= 0:
        return []
    seq = sturm_sequence(f)
    B = cauchy_bound(f)
    out = []

    def split(lo, hi, vlo, vhi):
        n = vlo - vhi
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        # mid cannot be a root: f has no rational roots
        vm = _variations_at(seq, mid)
        split(lo, mid, vlo, vm)
        split(mid, hi, vm, vhi)

    split(-B, B, _variations_at(seq, -B), _variations_at(seq, B))
    return out


def refine_interval(f: Poly1, lo: Fraction, hi: Fraction, width) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of f until hi - lo <= width."""
    flo = eval_at(f, lo)
    width = Fraction(width)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = eval_at(f, mid)
        if fm == 0:
            return mid, mid
        if (flo > 0) != (fm > 0):
            hi = mid
        else:
            lo, flo = mid, fm
    return lo, hi
