"""Sturm sequences over Q(w) and sign counts at the two infinite endpoints.

``-inf_F`` is the bottom of the ordered field (below every element of Q(w));
``-inf`` is the bottom of the reals inside it, i.e. it sits above every
element that tends to minus infinity as w -> 0+ and below every other one.
Both are transcendental over Q(w), so neither is ever a root.

Remainders are computed fraction-free in Z[w][t] and each one is divided by
its content with the sign chosen positive in the ordered field.  Every
element is thus a positive multiple of the classical signed remainder, which
leaves all sign lists unchanged.
"""

from dataclasses import dataclass

from flint import fmpq_poly, fmpz_poly

from .arith import FElem, as_felem, felem_limit, felem_sign
from .errors import EndpointIsRoot, NotSquareFree, ZeroPolynomial
from .upoly import UPoly, clear_denominators

_ZZERO = fmpz_poly([])


def _zsign(c):
    """Sign of an integer polynomial in w in the ordered field."""
    for x in c.coeffs():
        if x != 0:
            return 1 if x > 0 else -1
    return 0


def _strip(P):
    while P and P[-1].is_zero():
        P.pop()
    return P


def _primitive_positive(P):
    g = None
    for c in P:
        if not c.is_zero():
            g = c if g is None else g.gcd(c)
    if _zsign(g) < 0:
        g = -g
    if g == 1:
        return P
    return [c // g for c in P]


def _neg_prem(A, B):
    """Positive multiple of ``-rem(A, B)`` with integer-polynomial coefficients."""
    R = list(A)
    n = len(B) - 1
    lb = B[-1]
    steps = 0
    while len(R) - 1 >= n and R:
        k = len(R) - 1
        c = R[-1]
        shift = k - n
        R = [lb * x for x in R]
        for j, b in enumerate(B):
            R[shift + j] -= c * b
        _strip(R)
        steps += 1
    # R == lb^steps * A  - Q*B; keep the multiplier positive
    if steps % 2 == 1 and _zsign(lb) < 0:
        R = [-x for x in R]
    return _strip([-x for x in R])


def _to_upoly(P, var):
    return UPoly([FElem._raw(fmpq_poly(c), fmpz_poly([1])) for c in P], var)


def _from_upoly(f):
    return _strip(clear_denominators(f))


@dataclass(frozen=True)
class EvalPoint:
    """``-inf_F``, ``-inf`` or a finite element of Q(w)."""

    tag: str
    value: FElem | None = None

    @classmethod
    def minus_infinity_F(cls):
        return cls("MinusInfinityF")

    @classmethod
    def minus_infinity(cls):
        return cls("MinusInfinity")

    @classmethod
    def finite(cls, c):
        return cls("Finite", as_felem(c))

    def _cmp(self, other):
        rank = {"MinusInfinityF": 0, "MinusInfinity": 1}
        a, b = self, other
        if a.tag in rank and b.tag in rank:
            return rank[a.tag] - rank[b.tag]
        if a.tag == "Finite" and b.tag == "Finite":
            return felem_sign(a.value - b.value)
        flip = 1
        if a.tag == "Finite":
            a, b, flip = b, a, -1
        # a is infinite, b finite
        if a.tag == "MinusInfinityF":
            return -flip
        below = felem_limit(b.value) == float("-inf")
        return flip if below else -flip

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __str__(self):
        if self.tag == "MinusInfinityF":
            return "-inf_F"
        if self.tag == "MinusInfinity":
            return "-inf"
        return str(self.value)


MINUS_INFINITY_F = EvalPoint.minus_infinity_F()
MINUS_INFINITY = EvalPoint.minus_infinity()


@dataclass
class SturmSeq:
    polys: list

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


@dataclass
class SturmReport:
    signs_at_minus_infty_F: list
    signs_at_minus_infty: list
    v_F: int
    v_R: int
    v: int
    sequence: SturmSeq | None = None


def sturm_sequence(phi):
    """``[phi, phi', -rem, ...]`` up to positive scalars; the last element is constant."""
    if phi.is_zero():
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    var = phi.var
    if phi.degree() == 0:
        return SturmSeq([phi])
    d = phi.derivative()
    polys = [phi, d]
    A, B = _from_upoly(phi), _from_upoly(d)
    while len(B) > 1:
        R = _neg_prem(A, B)
        if not R:
            raise NotSquareFree(f"{phi} has a repeated factor")
        R = _primitive_positive(R)
        polys.append(_to_upoly(R, var))
        A, B = B, R
    return SturmSeq(polys)


def _parity_sign(lead_sign, degree):
    return lead_sign if degree % 2 == 0 else -lead_sign


def sign_at(phi, pt):
    if pt.tag == "Finite":
        return felem_sign(phi(pt.value))
    if phi.is_zero():
        raise ZeroPolynomial("sign of the zero polynomial at an infinite point")
    if pt.tag == "MinusInfinityF":
        return _parity_sign(felem_sign(phi.lc()), phi.degree())
    # clear denominators positively and take the lowest w-power slice
    P = _from_upoly(phi)
    alpha0 = min(next(i for i, x in enumerate(c.coeffs()) if x != 0) for c in P if not c.is_zero())
    top = max(k for k, c in enumerate(P) if c[alpha0] != 0)
    lead = P[top][alpha0]
    return _parity_sign(1 if lead > 0 else -1, top)


def sign_variations(signs):
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _signs(seq, pt):
    return [sign_at(f, pt) for f in seq]


def v_count(phi):
    seq = sturm_sequence(phi)
    sF = _signs(seq, MINUS_INFINITY_F)
    sR = _signs(seq, MINUS_INFINITY)
    vF, vR = sign_variations(sF), sign_variations(sR)
    return SturmReport(sF, sR, vF, vR, vF - vR, seq)


def count_roots_interval(phi, lo, hi):
    """Number of roots of square-free ``phi`` in the open interval ``(lo, hi)``."""
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    seq = sturm_sequence(phi)
    for pt in (lo, hi):
        if pt.tag == "Finite" and felem_sign(phi(pt.value)) == 0:
            raise EndpointIsRoot(f"{pt} is a root of {phi}")
    return sign_variations(_signs(seq, lo)) - sign_variations(_signs(seq, hi))
