"""Weight signatures and the catalog of weight-homogeneous families.

A planar polynomial field (P, Q) is weight-homogeneous with exponent
s = (s1, s2) and weight degree d when every monomial x^u y^v of P satisfies
s1*u + s2*v = s1 - 1 + d and every monomial of Q satisfies
s1*u + s2*v = s2 - 1 + d; equivalently P(t^s1 x, t^s2 y) = t^(s1-1+d) P and
Q(t^s1 x, t^s2 y) = t^(s2-1+d) Q for all t > 0.

For coprime P, Q and d <= 4 the admissible supports form a short catalog,
named here by weight data (e.g. D2_S12 = weight degree 2, exponent (1, 2)).
Families whose exponent arrives mirrored (s1 > s2) are recognized through
the swap (x, y) -> (y, x), which is recorded on the tag.

Signatures are normalized to gcd(s1, s2) = 1; non-primitive multiples would
re-list each family at higher weight degree, so normalization keeps the
catalog canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd as int_gcd

from .algebra import BivariatePoly, is_coprime
from .errors import DomainError


@dataclass(frozen=True, order=True)
class WeightSignature:
    s1: int
    s2: int
    d: int

    def __post_init__(self):
        if self.s1 < 1 or self.s2 < 1 or self.d < 1:
            raise ValueError("weight data must be positive")
        if int_gcd(self.s1, self.s2) != 1:
            raise ValueError("weight exponent must be primitive")

    def __str__(self):
        return f"s=({self.s1},{self.s2}), d={self.d}"


class Family(str, Enum):
    """Catalog of coprime weight-homogeneous families of weight degree <= 4,
    keyed by (weight degree, exponent).  D1_S1P covers the whole exponent
    family s = (1, p), p >= 2, at weight degree 1."""

    D1_S11 = "d1s11"   # general linear field
    D1_S1P = "d1s1p"   # x' = a10 x,              y' = bp0 x^p + b01 y
    D2_S11 = "d2s11"   # quadratic homogeneous
    D2_S12 = "d2s12"   # x' = a20 x^2 + a01 y,    y' = b30 x^3 + b11 xy
    D2_S23 = "d2s23"   # x' = a01 y,              y' = b20 x^2
    D3_S11 = "d3s11"   # cubic homogeneous
    D3_S12 = "d3s12"   # x' = a30 x^3 + a11 xy,   y' = b40 x^4 + b21 x^2 y + b02 y^2
    D3_S13 = "d3s13"   # x' = a30 x^3 + a01 y,    y' = b50 x^5 + b21 x^2 y
    D4_S11 = "d4s11"   # quartic homogeneous
    D4_S12 = "d4s12"   # x' = a40 x^4 + a21 x^2 y + a02 y^2, y' = b50 x^5 + b31 x^3 y + b12 xy^2
    D4_S13 = "d4s13"   # x' = a40 x^4 + a11 xy,   y' = b60 x^6 + b31 x^3 y + b02 y^2
    D4_S14 = "d4s14"   # x' = a40 x^4 + a01 y,    y' = b70 x^7 + b31 x^3 y
    D4_S23 = "d4s23"   # x' = a11 xy,             y' = b30 x^3 + b02 y^2
    D4_S25 = "d4s25"   # x' = a01 y,              y' = b40 x^4

    def __str__(self):
        return self.value


_FAMILY_BY_KEY = {
    (1, 1, 1): Family.D1_S11,
    (2, 1, 1): Family.D2_S11,
    (2, 1, 2): Family.D2_S12,
    (2, 2, 3): Family.D2_S23,
    (3, 1, 1): Family.D3_S11,
    (3, 1, 2): Family.D3_S12,
    (3, 1, 3): Family.D3_S13,
    (4, 1, 1): Family.D4_S11,
    (4, 1, 2): Family.D4_S12,
    (4, 1, 3): Family.D4_S13,
    (4, 1, 4): Family.D4_S14,
    (4, 2, 3): Family.D4_S23,
    (4, 2, 5): Family.D4_S25,
}

HOMOGENEOUS_FAMILIES = {Family.D1_S11, Family.D2_S11, Family.D3_S11, Family.D4_S11}


@dataclass(frozen=True)
class OutsideCatalog:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class FamilyTag:
    """A catalog match: family, signature, and the named coefficients, keyed
    a{u}{v} / b{u}{v} by exponent.  When `mirrored` is set the names refer to
    the system after the swap (x, y) -> (y, x)."""

    family: Family
    signature: WeightSignature
    named_coefficients: dict
    mirrored: bool = False

    def coeff(self, name: str) -> Fraction:
        return self.named_coefficients.get(name, Fraction(0))


def admissible_support(sig: WeightSignature):
    """(P-support, Q-support) dictated by the weight relations."""
    s1, s2, d = sig.s1, sig.s2, sig.d
    sp, sq = [], []
    tp, tq = s1 - 1 + d, s2 - 1 + d
    for u in range(tp // s1 + 1):
        rest = tp - s1 * u
        if rest >= 0 and rest % s2 == 0:
            sp.append((u, rest // s2))
    for u in range(tq // s1 + 1):
        rest = tq - s1 * u
        if rest >= 0 and rest % s2 == 0:
            sq.append((u, rest // s2))
    return sorted(sp), sorted(sq)


def detect_weight_signatures(p: BivariatePoly, q: BivariatePoly):
    """All primitive weight signatures of a coprime pair, sorted by
    (d, s1, s2).  Exponents are searched in 1..(max total degree + 1), which
    is exhaustive for primitive signatures of polynomial fields."""
    if p.is_zero and q.is_zero:
        raise DomainError("zero vector field")
    if not is_coprime(p, q):
        raise DomainError("P and Q must be coprime")
    bound = max(p.total_degree, q.total_degree) + 1
    found = []
    for s1 in range(1, bound + 1):
        for s2 in range(1, bound + 1):
            if int_gcd(s1, s2) != 1:
                continue
            ds = set()
            for (u, v) in p.support:
                ds.add(s1 * u + s2 * v - s1 + 1)
            for (u, v) in q.support:
                ds.add(s1 * u + s2 * v - s2 + 1)
            if len(ds) == 1:
                d = ds.pop()
                if d >= 1:
                    found.append(WeightSignature(s1, s2, d))
    found.sort(key=lambda s: (s.d, s.s1, s.s2))
    return found


def _extract_names(p: BivariatePoly, q: BivariatePoly, sig: WeightSignature):
    sp, sq = admissible_support(sig)
    names = {}
    for (u, v) in sp:
        c = p.coefficient(u, v)
        if c != 0:
            names[f"a{u}{v}"] = c
    for (u, v) in sq:
        c = q.coefficient(u, v)
        if c != 0:
            names[f"b{u}{v}"] = c
    return names


def classify_family(p: BivariatePoly, q: BivariatePoly, sig: WeightSignature):
    """Match (p, q) carrying the signature `sig` against the catalog.

    Vanishing coefficients keep an instance inside its containing family.
    Exponents with s1 > s2 are matched through the x <-> y swap.  Weight
    degree >= 5, and exponent shapes that cannot carry coprime members,
    fall outside the catalog.
    """
    if sig.d > 4:
        return OutsideCatalog(f"weight degree {sig.d} exceeds the catalog range (1..4)")
    key = (sig.d, sig.s1, sig.s2)
    if sig.d == 1 and sig.s1 == 1 and sig.s2 >= 2:
        fam = Family.D1_S1P
    elif key in _FAMILY_BY_KEY:
        fam = _FAMILY_BY_KEY[key]
    else:
        mkey = (sig.d, sig.s2, sig.s1)
        mirrored_d1 = sig.d == 1 and sig.s2 == 1 and sig.s1 >= 2
        if mkey in _FAMILY_BY_KEY or mirrored_d1:
            swapped_sig = WeightSignature(sig.s2, sig.s1, sig.d)
            tag = classify_family(q.swap_xy(), p.swap_xy(), swapped_sig)
            if isinstance(tag, OutsideCatalog):
                return tag
            return FamilyTag(tag.family, sig, tag.named_coefficients, mirrored=True)
        return OutsideCatalog(f"no coprime catalog family with {sig}")
    return FamilyTag(fam, sig, _extract_names(p, q, sig))


def match_catalog(p: BivariatePoly, q: BivariatePoly):
    """First catalog match over all detected signatures (tie-break: smallest
    (d, s1, s2)), or OutsideCatalog."""
    sigs = detect_weight_signatures(p, q)
    if not sigs:
        return OutsideCatalog("not weight-homogeneous"), []
    for sig in sigs:
        tag = classify_family(p, q, sig)
        if isinstance(tag, FamilyTag):
            return tag, sigs
    return OutsideCatalog(f"no catalog family for signatures {[str(s) for s in sigs]}"), sigs


def reconstruct(tag: FamilyTag):
    """Rebuild (P, Q) from a tag; inverse of classify_family up to the
    recorded mirror."""
    sig = tag.signature
    base_sig = WeightSignature(sig.s2, sig.s1, sig.d) if tag.mirrored else sig
    sp, sq = admissible_support(base_sig)
    pterms, qterms = {}, {}
    for (u, v) in sp:
        c = tag.named_coefficients.get(f"a{u}{v}")
        if c:
            pterms[(u, v)] = c
    for (u, v) in sq:
        c = tag.named_coefficients.get(f"b{u}{v}")
        if c:
            qterms[(u, v)] = c
    p, q = BivariatePoly(pterms), BivariatePoly(qterms)
    if tag.mirrored:
        p, q = q.swap_xy(), p.swap_xy()
    return p, q
