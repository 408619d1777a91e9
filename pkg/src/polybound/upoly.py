"""Dense univariate polynomials over Q(w)."""

from fractions import Fraction
from math import gcd as igcd

from flint import fmpq_poly, fmpz_mpoly_ctx, fmpz_poly

from .arith import FElem, as_felem, felem_sign
from .errors import DivisionByZero, ZeroPolynomial

_ZERO = FElem()
_ONE = FElem(1)


class UPoly:
    """Polynomial in one variable with ``FElem`` coefficients, ascending order."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="t"):
        cs = [as_felem(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def _raw(cls, coeffs, var):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(cs)
        obj.var = var
        return obj

    @classmethod
    def monomial(cls, k, var="t", c=1):
        return cls([0] * k + [c], var)

    @classmethod
    def from_mpoly(cls, f, var=None):
        """Univariate view of an MPoly that involves at most one variable."""
        used = f.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"{f} is not univariate")
            var = used[0] if used else f.vars[-1] if f.vars else "t"
        elif any(v != var for v in used):
            raise ValueError(f"{f} involves variables other than {var}")
        i = f.vars.index(var) if var in f.vars else None
        dense = {}
        for m, c in f.terms.items():
            dense[m[i] if i is not None else 0] = c
        top = max(dense, default=-1)
        return cls([dense.get(k, 0) for k in range(top + 1)], var)

    def to_mpoly(self, vars=None):
        from .mpoly import MPoly

        vars = tuple(vars) if vars is not None else (self.var,)
        i = vars.index(self.var)
        n = len(vars)
        return MPoly(
            {tuple(k if j == i else 0 for j in range(n)): c for k, c in enumerate(self.coeffs)},
            vars,
        )

    # queries ---------------------------------------------------------------
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def is_rational(self):
        return all(c.is_rational() for c in self.coeffs)

    def __call__(self, x):
        x = as_felem(x)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # arithmetic ------------------------------------------------------------
    def _like(self, coeffs):
        return UPoly._raw(coeffs, self.var)

    def __add__(self, g):
        g = self._other(g)
        n = max(len(self.coeffs), len(g.coeffs))
        return self._like(self[k] + g[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return self._like(-c for c in self.coeffs)

    def __sub__(self, g):
        return self + (-self._other(g))

    def __rsub__(self, g):
        return self._other(g) - self

    def __mul__(self, g):
        if not isinstance(g, UPoly):
            c = as_felem(g)
            return self._like(a * c for a in self.coeffs)
        if not self.coeffs or not g.coeffs:
            return self._like(())
        out = [_ZERO] * (len(self.coeffs) + len(g.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(g.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._like(out)

    __rmul__ = __mul__

    def _other(self, g):
        if isinstance(g, UPoly):
            return g
        return UPoly([g], self.var)

    def __divmod__(self, g):
        if g.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        r = list(self.coeffs)
        dg = g.degree()
        inv = g.lc().inverse()
        q = [_ZERO] * max(len(r) - dg, 0)
        for k in range(len(r) - 1 - dg, -1, -1):
            c = r[k + dg]
            if c.is_zero():
                continue
            c = c * inv
            q[k] = c
            for j in range(dg + 1):
                r[k + j] = r[k + j] - c * g.coeffs[j]
        return self._like(q), self._like(r[:dg] if dg > 0 else [])

    def __mod__(self, g):
        return divmod(self, g)[1]

    def __floordiv__(self, g):
        return divmod(self, g)[0]

    def __pow__(self, k):
        out = UPoly([1], self.var)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self):
        return self._like(c * k for k, c in enumerate(self.coeffs) if k)

    def monic(self):
        inv = self.lc().inverse()
        return self._like(c * inv for c in self.coeffs)

    # equality ----------------------------------------------------------------
    def __eq__(self, g):
        if isinstance(g, UPoly):
            return self.coeffs == g.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def equal_up_to_scalar(self, g):
        """True when ``self == c * g`` for a nonzero ``c`` in Q(w)."""
        if self.degree() != g.degree():
            return False
        if self.is_zero():
            return True
        r = self.lc() / g.lc()
        return all(a == r * b for a, b in zip(self.coeffs, g.coeffs))

    def canonical(self):
        return canonical(self)

    def to_int_arrays(self):
        """Canonical form as nested integer lists: ``[t^k][w^j]``."""
        c = canonical(self)
        return [[int(x) for x in co._num.numer().coeffs()] for co in c.coeffs]

    @classmethod
    def from_int_arrays(cls, arrays, var="t"):
        return cls([FElem(fmpz_poly(list(a))) for a in arrays], var)

    def __str__(self):
        return str(self.to_mpoly()) if self.coeffs else "0"

    def __repr__(self):
        return f"UPoly({self})"


_ZW = fmpz_mpoly_ctx.get(("t", "w"), "lex")


def _to_zw(f):
    """Positive integer multiple of ``f`` as an element of Z[t, w]."""
    terms = {}
    for k, c in enumerate(clear_denominators(f)):
        for j, x in enumerate(c.coeffs()):
            if x != 0:
                terms[(k, j)] = int(x)
    return _ZW.from_dict(terms)


def _from_zw(P, var):
    dense = {}
    for (k, j), x in P.to_dict().items():
        dense.setdefault(k, {})[j] = int(x)
    top = max(dense, default=-1)
    out = []
    for k in range(top + 1):
        row = dense.get(k, {})
        width = max(row, default=-1) + 1
        out.append(FElem._raw(fmpq_poly([row.get(j, 0) for j in range(width)]), fmpz_poly([1])))
    return UPoly._raw(out, var)


def upoly_gcd(f, g):
    """Monic gcd over Q(w); ``gcd(0, 0) == 0``."""
    if f.is_zero() and g.is_zero():
        return f
    if f.is_zero() or g.is_zero():
        return (g if f.is_zero() else f).monic()
    h = _to_zw(f).gcd(_to_zw(g))
    return _from_zw(h, f.var).monic()


def upoly_xgcd(f, g):
    """Return ``(d, a, b)`` with ``a*f + b*g == d`` and ``d`` monic."""
    one = UPoly([1], f.var)
    zero = UPoly([], f.var)
    r0, r1, a0, a1, b0, b1 = f, g, one, zero, zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        a0, a1 = a1, a0 - q * a1
        b0, b1 = b1, b0 - q * b1
    if r0.is_zero():
        return r0, a0, b0
    inv = r0.lc().inverse()
    return r0 * inv, a0 * inv, b0 * inv


def square_free_part(f):
    """``f / gcd(f, f')`` in canonical form."""
    if f.is_zero():
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if f.degree() <= 0:
        return canonical(f)
    F = _to_zw(f)
    g = F.gcd(F.derivative("t"))
    if g.degrees()[0] > 0:
        f = _from_zw(F // g, f.var)
    return canonical(f)


def _positive_clear(coeffs):
    """Scale FElem coefficients by a positive factor into Z[w]; return fmpz_polys."""
    L = fmpz_poly([1])
    for c in coeffs:
        d = c._den
        g = L.gcd(d)
        L = L * (d // g)
    nums = [c._num * fmpq_poly(L // c._den) for c in coeffs]
    den = 1
    for v in nums:
        q = int(v.denom())
        den = den * q // igcd(den, q)
    # canonical denominators are positive in the ordered field, so L > 0
    return [(v * den).numer() for v in nums]


def clear_denominators(f):
    """Integer-polynomial coefficients of a positive multiple of ``f``."""
    return _positive_clear(f.coeffs)


def primitive_positive(f):
    """Positive multiple of ``f`` that is primitive in Z[w][t]."""
    if f.is_zero():
        return f
    ints = _positive_clear(f.coeffs)
    g = None
    for c in ints:
        if c.is_zero():
            continue
        g = c if g is None else g.gcd(c)
    # fix the content's sign in the ordered field so the scale stays positive
    low = next(x for x in g.coeffs() if x != 0)
    if low < 0:
        g = -g
    return UPoly._raw([FElem._raw(fmpq_poly(c // g), fmpz_poly([1])) for c in ints], f.var)


def canonical(f):
    """Primitive in Z[w][t] with leading coefficient positive in the ordered field."""
    if f.is_zero():
        return f
    p = primitive_positive(f)
    if felem_sign(p.lc()) < 0:
        p = -p
    return p


def rational_upoly(coeffs, var="t"):
    return UPoly([Fraction(c) for c in coeffs], var)
