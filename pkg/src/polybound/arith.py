"""Exact arithmetic: rationals, polynomials in the infinitesimal w, and Q(w).

``w`` is a positive infinitesimal: it is smaller than every positive
rational.  An element of Q(w) is therefore positive exactly when the
lowest-order coefficients of its numerator and denominator have the same
sign.

Rationals are :class:`fractions.Fraction`.  Polynomials in ``w`` are backed
by FLINT (``fmpq_poly``/``fmpz_poly``) for the primitive ring operations.
"""

from fractions import Fraction
import math

from flint import fmpq, fmpq_poly, fmpz, fmpz_poly

from .errors import DivisionByZero

Rat = Fraction

W_NAME = "w"


def to_rat(x):
    """Coerce an int, Fraction, decimal string or FLINT rational to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, fmpz):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _fmpq(x):
    x = to_rat(x)
    return fmpq(x.numerator, x.denominator)


def _sgn(x):
    return (x > 0) - (x < 0)


def _low(poly):
    """Lowest-order nonzero coefficient and its exponent of a FLINT polynomial."""
    for k, c in enumerate(poly.coeffs()):
        if c != 0:
            return k, c
    raise ValueError("zero polynomial has no order")


class PiPoly:
    """Polynomial in ``w`` with rational coefficients.

    Accepts a dict ``{exponent: coefficient}``, an ascending coefficient list,
    a scalar, or a FLINT polynomial.
    """

    __slots__ = ("_p",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            p = fmpq_poly()
        elif isinstance(coeffs, fmpq_poly):
            p = coeffs
        elif isinstance(coeffs, fmpz_poly):
            p = fmpq_poly(coeffs)
        elif isinstance(coeffs, PiPoly):
            p = coeffs._p
        elif isinstance(coeffs, dict):
            if any(k < 0 for k in coeffs):
                raise ValueError("exponents of w must be non-negative")
            top = max(coeffs, default=-1)
            dense = [fmpq(0)] * (top + 1)
            for k, c in coeffs.items():
                dense[k] = _fmpq(c)
            p = fmpq_poly(dense)
        elif isinstance(coeffs, (list, tuple)):
            p = fmpq_poly([_fmpq(c) for c in coeffs])
        else:
            p = fmpq_poly([_fmpq(coeffs)])
        self._p = p

    @classmethod
    def gen(cls):
        return cls(fmpq_poly([0, 1]))

    @property
    def coefficients(self):
        """Sparse map exponent -> Fraction, zeros omitted."""
        return {k: to_rat(c) for k, c in enumerate(self._p.coeffs()) if c != 0}

    def is_zero(self):
        return self._p.is_zero()

    def degree(self):
        return self._p.degree()

    def order(self):
        """Smallest exponent with nonzero coefficient; ``None`` for zero."""
        if self._p.is_zero():
            return None
        return _low(self._p)[0]

    def lowest_coefficient(self):
        return to_rat(_low(self._p)[1])

    def __call__(self, value):
        return to_rat(self._p(_fmpq(value)))

    def __add__(self, other):
        return PiPoly(self._p + _as_fmpq_poly(other))

    __radd__ = __add__

    def __sub__(self, other):
        return PiPoly(self._p - _as_fmpq_poly(other))

    def __rsub__(self, other):
        return PiPoly(_as_fmpq_poly(other) - self._p)

    def __mul__(self, other):
        return PiPoly(self._p * _as_fmpq_poly(other))

    __rmul__ = __mul__

    def __neg__(self):
        return PiPoly(-self._p)

    def __divmod__(self, other):
        q, r = divmod(self._p, _as_fmpq_poly(other))
        return PiPoly(q), PiPoly(r)

    def gcd(self, other):
        """Monic gcd; ``gcd(0, 0) == 0``."""
        return pipoly_gcd(self, other)

    def __eq__(self, other):
        if isinstance(other, PiPoly):
            return self._p == other._p
        try:
            return self._p == _as_fmpq_poly(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coefficients.items()))

    def __bool__(self):
        return not self._p.is_zero()

    def __str__(self):
        return _poly_str(self.coefficients, W_NAME)

    def __repr__(self):
        return f"PiPoly({self})"


def _as_fmpq_poly(x):
    if isinstance(x, PiPoly):
        return x._p
    if isinstance(x, fmpq_poly):
        return x
    if isinstance(x, fmpz_poly):
        return fmpq_poly(x)
    return fmpq_poly([_fmpq(x)])


def pipoly_gcd(a, b):
    """Monic greatest common divisor of two polynomials in ``w``."""
    pa, pb = _as_fmpq_poly(a), _as_fmpq_poly(b)
    if pa.is_zero() and pb.is_zero():
        return PiPoly()
    return PiPoly(pa.gcd(pb))


def _poly_str(coeffs, var):
    if not coeffs:
        return "0"
    parts = []
    for k in sorted(coeffs, reverse=True):
        c = coeffs[k]
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = var if k == 1 else f"{var}^{k}"
        else:
            body = f"{mag}*{var}" if k == 1 else f"{mag}*{var}^{k}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class FElem:
    """Element of the ordered field Q(w).

    Canonical form: ``num`` in Q[w], ``den`` a primitive integer polynomial
    whose lowest-order coefficient is positive, and ``gcd(num, den) == 1``.
    Equal field elements therefore have identical representations.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num=0, den=1):
        n = _as_fmpq_poly(num.to_pipoly() if isinstance(num, FElem) else num)
        if isinstance(num, FElem) or isinstance(den, FElem):
            # general quotient of field elements
            a = num if isinstance(num, FElem) else FElem(num)
            b = den if isinstance(den, FElem) else FElem(den)
            q = a / b
            self._num, self._den = q._num, q._den
            return
        d = _as_fmpq_poly(den)
        if d.is_zero():
            raise DivisionByZero("zero denominator in Q(w)")
        self._num, self._den = _canonical(n, d)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj._num = num
        obj._den = den
        return obj

    @classmethod
    def from_fmpz(cls, num, den):
        """Build from integer polynomials (``den`` nonzero)."""
        if den.is_zero():
            raise DivisionByZero("zero denominator in Q(w)")
        return cls._raw(*_canonical(fmpq_poly(num), fmpq_poly(den)))

    @classmethod
    def w(cls):
        return cls._raw(fmpq_poly([0, 1]), fmpz_poly([1]))

    @property
    def num(self):
        return PiPoly(self._num)

    @property
    def den(self):
        return PiPoly(fmpq_poly(self._den))

    def to_pipoly(self):
        """The element as a polynomial in ``w``; fails if it is not one."""
        if self._den != 1:
            raise ValueError(f"{self} is not a polynomial in w")
        return PiPoly(self._num)

    def is_zero(self):
        return self._num.is_zero()

    def __bool__(self):
        return not self._num.is_zero()

    def sign(self):
        return felem_sign(self)

    def order(self):
        return felem_order(self)

    def limit(self):
        return felem_limit(self)

    # field operations ------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return FElem._from_parts(self._num + o._num, self._den)
        return FElem._from_parts(
            self._num * o._den + o._num * self._den, self._den * o._den
        )

    __radd__ = __add__

    def __neg__(self):
        return FElem._raw(-self._num, self._den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._den == 1 and o._den == 1:
            return FElem._raw(self._num * o._num, self._den)
        return FElem._from_parts(self._num * o._num, self._den * o._den)

    __rmul__ = __mul__

    def inverse(self):
        if self._num.is_zero():
            raise DivisionByZero("inverse of zero in Q(w)")
        return FElem._from_parts(fmpq_poly(self._den), self._num)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o._num.is_zero():
            raise DivisionByZero("division by zero in Q(w)")
        return FElem._from_parts(self._num * o._den, o._num * self._den)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return FElem._raw(self._num**k, self._den**k)

    @classmethod
    def _from_parts(cls, num, den):
        if not isinstance(den, fmpq_poly):
            den = fmpq_poly(den)
        return cls._raw(*_canonical(num, den))

    # comparisons -----------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        if self._den == 1 and self._num.degree() <= 0:
            return hash(to_rat(self._num[0]))
        return hash((str(self._num), str(self._den)))

    def __lt__(self, other):
        return felem_sign(self - other) < 0

    def __le__(self, other):
        return felem_sign(self - other) <= 0

    def __gt__(self, other):
        return felem_sign(self - other) > 0

    def __ge__(self, other):
        return felem_sign(self - other) >= 0

    def is_rational(self):
        return self._den == 1 and self._num.degree() <= 0

    def to_rat(self):
        if not self.is_rational():
            raise ValueError(f"{self} depends on w")
        return to_rat(self._num[0])

    def __str__(self):
        n = _poly_str(PiPoly(self._num).coefficients, W_NAME)
        if self._den == 1:
            return n
        d = _poly_str(PiPoly(fmpq_poly(self._den)).coefficients, W_NAME)
        return f"({n})/({d})"

    def __repr__(self):
        return f"FElem({self})"


def _canonical(num, den):
    """Reduce ``num/den`` (fmpq_poly pair) to the canonical representation."""
    if num.is_zero():
        return fmpq_poly(), fmpz_poly([1])
    if den.degree() > 0:
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
    dz = den.numer()  # den == dz / den.denom()
    scale = fmpq(int(den.denom()), 1)
    c = dz.content()
    if c != 1:
        dz = dz // c
        scale = scale / c
    if _low(dz)[1] < 0:
        dz = -dz
        scale = -scale
    if scale != 1:
        num = num * scale
    return num, dz


def _coerce(x):
    if isinstance(x, FElem):
        return x
    if isinstance(x, (int, Fraction, fmpq)):
        return FElem._raw(fmpq_poly([_fmpq(x)]), fmpz_poly([1]))
    if isinstance(x, PiPoly):
        return FElem._raw(x._p, fmpz_poly([1]))
    return None


def as_felem(x):
    """Coerce a scalar (int, Fraction, PiPoly, FElem) into Q(w)."""
    o = _coerce(x)
    if o is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(w)")
    return o


def felem_arith(a, b, op):
    a, b = as_felem(a), as_felem(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def felem_sign(a):
    """Sign in the ordered field where w is a positive infinitesimal."""
    a = as_felem(a)
    if a._num.is_zero():
        return 0
    # canonical denominators have a positive lowest-order coefficient
    return _sgn(_low(a._num)[1])


def felem_order(a):
    """``order(num) - order(den)``; ``math.inf`` for zero."""
    a = as_felem(a)
    if a._num.is_zero():
        return math.inf
    return _low(a._num)[0] - _low(a._den)[0]


def felem_limit(a):
    """Limit as w -> 0+: a Fraction, or +/- ``math.inf``."""
    a = as_felem(a)
    if a._num.is_zero():
        return Fraction(0)
    kn, cn = _low(a._num)
    kd, cd = _low(a._den)
    if kn > kd:
        return Fraction(0)
    if kn == kd:
        return to_rat(cn) / to_rat(cd)
    return math.inf if _sgn(cn) * _sgn(cd) > 0 else -math.inf


ZERO = FElem()
ONE = FElem(1)
