"""Finite-dimensional quotient algebras over Q(w).

Zero-dimensional ideals are handled through their quotient algebra: a
degree-compatible Groebner basis gives a monomial basis and multiplication
operators, and from those linear algebra recovers minimal polynomials and
reduced lex bases.  This is much cheaper than a lex Buchberger run over Q(w),
where w-degrees of intermediate coefficients explode.

The ideal with the inverted derivative, ``<Phi, s*d - 1>``, is obtained by
localizing: if ``mu(T) = T^r nu(T)`` is the minimal polynomial of ``d`` with
``nu(0) != 0``, then ``e = a(d) d^r`` (where ``a T^r + b nu = 1``) is the
idempotent that kills the part of the algebra where ``d`` is nilpotent, and
``e*A`` is the quotient by the localized ideal.  On ``e*A`` the variable ``s``
acts as ``d^{-1}``.
"""

from flint import fmpz_poly

from .arith import FElem
from .errors import NotGeneric
from .groebner import Budget, Engine, to_engine
from .mpoly import MPoly, VarOrder
from .upoly import UPoly, upoly_xgcd

_ONE_Z = fmpz_poly([1])
_ZERO = FElem()
_ONE = FElem(1)


# -- vectors --------------------------------------------------------------------

def vzero(n):
    return [_ZERO] * n


def vadd(u, v):
    return [a + b for a, b in zip(u, v)]


def vscale(v, c):
    if c == 1:
        return list(v)
    return [a * c if a else a for a in v]


def vaxpy(u, c, v):
    """``u + c*v``."""
    return [a + c * b if b else a for a, b in zip(u, v)]


def is_zero_vec(v):
    return all(a.is_zero() for a in v)


def matvec(cols, v):
    """Apply a matrix stored as a list of columns."""
    out = vzero(len(cols[0])) if cols else []
    for j, c in enumerate(v):
        if c:
            out = vaxpy(out, c, cols[j])
    return out


class Echelon:
    """Incremental row echelon form that records how each row was built.

    ``insert(v, tag)`` either stores ``v`` (returning ``None``) or, when ``v``
    depends on what is stored, returns a relation ``{tag: coeff}`` with
    ``sum(coeff * vector(tag)) == 0`` and coefficient 1 on the new tag.
    """

    def __init__(self):
        self.rows = []

    def insert(self, v, tag):
        r = list(v)
        combo = {tag: _ONE}
        for piv, row, rc in self.rows:
            c = r[piv]
            if c:
                r = vaxpy(r, -c, row)
                for k, x in rc.items():
                    combo[k] = combo.get(k, _ZERO) - c * x
        piv = next((i for i, a in enumerate(r) if a), None)
        if piv is None:
            return {k: x for k, x in combo.items() if x}
        inv = r[piv].inverse()
        self.rows.append((piv, vscale(r, inv), {k: x * inv for k, x in combo.items()}))
        return None

    def __len__(self):
        return len(self.rows)


def krylov_minpoly(apply, v, var="t", limit=None):
    """Monic generator of ``{f : f(op) v = 0}`` for a linear operator ``op``."""
    ech = Echelon()
    k = 0
    cur = v
    while True:
        rel = ech.insert(cur, k)
        if rel is not None:
            return UPoly([rel.get(j, _ZERO) for j in range(k + 1)], var)
        k += 1
        if limit is not None and k > limit:
            raise RuntimeError("Krylov sequence longer than the space dimension")
        cur = apply(cur)


def apply_upoly(f, apply, v):
    """``f(op) v`` by Horner's rule."""
    acc = vzero(len(v))
    for c in reversed(f.coeffs):
        acc = vaxpy(apply(acc), c, v) if not is_zero_vec(acc) else vscale(v, c)
    return acc


# -- the algebra ----------------------------------------------------------------

class QuotientAlgebra:
    """``Q(w)[vars]/I`` for a zero-dimensional ideal given by generators."""

    def __init__(self, generators, vars, budget=None):
        self.vars = tuple(vars)
        self.order = VarOrder(self.vars, "grevlex")
        self.key = self.order.key(self.vars)
        self.engine = Engine(self.key, budget or Budget())
        gb = self.engine.groebner([to_engine(g)[0] for g in generators])
        self.gb = self.engine._sorted(gb)
        self.lms = [lm for _, lm in self.gb]
        self.zero_dimensional = self._zero_dim()
        if not self.zero_dimensional:
            self.basis = None
            return
        self.basis = self._standard_monomials()
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._ops = {}

    def _zero_dim(self):
        n = len(self.vars)
        if any(not any(lm) for lm in self.lms):
            return True  # unit ideal
        for i in range(n):
            if not any(lm[i] and all(e == 0 for j, e in enumerate(lm) if j != i) for lm in self.lms):
                return False
        return True

    def _standard_monomials(self):
        n = len(self.vars)
        if any(not any(lm) for lm in self.lms):
            return []
        seen = {(0,) * n}
        frontier = [(0,) * n]
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(n):
                    mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                    if mm in seen:
                        continue
                    if any(all(a <= b for a, b in zip(lm, mm)) for lm in self.lms):
                        continue
                    seen.add(mm)
                    nxt.append(mm)
            frontier = nxt
        return sorted(seen, key=self.key)

    def unit(self):
        v = vzero(self.dim)
        if self.dim:
            v[self.index[(0,) * len(self.vars)]] = _ONE
        return v

    def reduce_engine(self, F, scale):
        """Coordinate vector of ``F/scale`` (engine form)."""
        if not F:
            return vzero(self.dim)
        r, a, c = self.engine.nf(F, self.gb)
        out = vzero(self.dim)
        if not r:
            return out
        factor = FElem.from_fmpz(c, a) / scale
        for m, co in r.items():
            out[self.index[m]] = FElem.from_fmpz(co, _ONE_Z) * factor
        return out

    def vector(self, f):
        F, fs = to_engine(f.with_vars(self.vars))
        return self.reduce_engine(F, fs)

    def matrix(self, f):
        """Multiplication-by-``f`` operator as a list of columns."""
        F, fs = to_engine(f.with_vars(self.vars))
        cols = []
        for b in self.basis:
            shifted = {tuple(x + y for x, y in zip(m, b)): c for m, c in F.items()}
            cols.append(self.reduce_engine(shifted, fs))
        return cols

    def operator(self, f):
        key = str(f)
        op = self._ops.get(key)
        if op is None:
            op = self._ops[key] = self.matrix(f)
        return op

    def mul(self, f, v):
        return matvec(self.operator(f), v)

    def element(self, v):
        """Polynomial represented by a coordinate vector."""
        return MPoly({m: c for m, c in zip(self.basis, v) if c}, self.vars)


class LocalizedAlgebra:
    """``e*A`` for the idempotent ``e`` inverting ``d``; ``s`` acts as ``1/d``."""

    def __init__(self, A, d, s_name="s"):
        self.A = A
        self.d = d
        self.s_name = s_name
        Md = A.operator(d)
        one = A.unit()
        mu = krylov_minpoly(lambda v: matvec(Md, v), one, limit=A.dim)
        r = 0
        while r < len(mu.coeffs) and mu.coeffs[r].is_zero():
            r += 1
        nu = UPoly(mu.coeffs[r:], "t")
        self.mu, self.r, self.nu = mu, r, nu
        self._Md = Md
        if nu.degree() == 0:
            # d is nilpotent: the localized algebra is zero
            self.e = vzero(A.dim)
        elif r == 0:
            self.e = one
        else:
            tr = UPoly.monomial(r, "t")
            g, a, _ = upoly_xgcd(tr, nu)
            if g.degree() != 0:
                raise ArithmeticError("T^r and nu are not coprime")
            e = apply_upoly(a, self._apply_d, one)
            for _ in range(r):
                e = self._apply_d(e)
            self.e = e
        # d^{-1} = -nu'(d)/nu(0) on e*A, with nu(T) = nu(0) + T*nu'(T)
        if nu.degree() > 0:
            self._inv = UPoly(nu.coeffs[1:], "t") * (-nu.coeffs[0].inverse())
        else:
            self._inv = None

    def _apply_d(self, v):
        return matvec(self._Md, v)

    @property
    def is_zero(self):
        return is_zero_vec(self.e)

    def unit(self):
        return self.e

    def apply_var(self, name, v):
        if name == self.s_name:
            return apply_upoly(self._inv, self._apply_d, v)
        return self.A.mul(MPoly.var(name, self.A.vars), v)

    def apply_poly(self, f, v):
        return self.A.mul(f, v)


class PlainAlgebra:
    """Adapter giving a QuotientAlgebra the same interface as LocalizedAlgebra."""

    def __init__(self, A):
        self.A = A

    @property
    def is_zero(self):
        return self.A.dim == 0

    def unit(self):
        return self.A.unit()

    def apply_var(self, name, v):
        return self.A.mul(MPoly.var(name, self.A.vars), v)

    def apply_poly(self, f, v):
        return self.A.mul(f.with_vars(self.A.vars), v)


def minimal_polynomial(alg, f, var="t"):
    """Minimal polynomial of the element ``f`` in the algebra ``alg``."""
    if alg.is_zero:
        return UPoly([1], var)
    return krylov_minpoly(lambda v: alg.apply_poly(f, v), alg.unit(), var)


def lex_basis(alg, order_vars, vars):
    """Reduced lex basis of the ideal presented by ``alg``.

    ``order_vars`` lists the variables from highest to lowest; ``vars`` is the
    registry of the returned polynomials.  Monomials are visited in
    increasing lex order, each one either extends the staircase or yields a
    basis element (the classical change-of-order walk).
    """
    n = len(vars)
    pos = [vars.index(v) for v in order_vars]

    def key(m):
        return tuple(m[i] for i in pos)

    if alg.is_zero:
        return [MPoly.const(1, vars)]
    ech = Echelon()
    vecs = {}
    leads = []
    elements = []
    # candidate monomial -> (variable, staircase monomial it extends)
    candidates = {(0,) * n: None}
    while candidates:
        m = min(candidates, key=key)
        src = candidates.pop(m)
        if any(all(a <= b for a, b in zip(lm, m)) for lm in leads):
            continue
        v = alg.unit() if src is None else alg.apply_var(src[0], vecs[src[1]])
        rel = ech.insert(v, m)
        if rel is not None:
            leads.append(m)
            elements.append(MPoly(rel, vars))
            continue
        vecs[m] = v
        for i in range(n):
            mm = m[:i] + (m[i] + 1,) + m[i + 1:]
            if mm not in candidates and mm not in vecs:
                candidates[mm] = (vars[i], m)
    elements.sort(key=lambda g: key(max(g.terms, key=key)))
    return elements


def check_finite(A):
    if not A.zero_dimensional:
        raise NotGeneric("the tangency variety is not finite at this point")
