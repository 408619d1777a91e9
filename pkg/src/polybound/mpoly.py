"""Sparse multivariate polynomials over Q or Q(w).

A polynomial carries its variable registry (a tuple of names); monomials are
exponent tuples aligned with that registry.  Coefficients are ``Fraction``
when rational and :class:`~polybound.arith.FElem` otherwise, so rational
inputs never pay for rational-function arithmetic.
"""

from fractions import Fraction
from itertools import combinations

from .arith import FElem, as_felem, to_rat
from .errors import (
    DimensionMismatch,
    NonRational,
    NonSquare,
    RegistryMismatch,
    UnknownVariable,
    VariableCollision,
)


def norm_coeff(c):
    """Canonical scalar: Fraction when rational, FElem otherwise."""
    if isinstance(c, FElem):
        return c.to_rat() if c.is_rational() else c
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return to_rat(c)


def _is_zero(c):
    return c == 0


class Point(tuple):
    """A rational point; coordinates are coerced to ``Fraction``."""

    def __new__(cls, coords):
        try:
            vals = [to_rat(c) for c in coords]
        except (TypeError, ValueError) as exc:
            raise NonRational(f"point coordinates must be rational: {coords!r}") from exc
        return super().__new__(cls, vals)

    @classmethod
    def parse(cls, text):
        return cls(part.strip() for part in text.split(","))

    def __str__(self):
        return ",".join(str(c) for c in self)

    def __repr__(self):
        return f"Point({self})"


class VarOrder:
    """Monomial order on a registry.

    ``permutation`` lists variable names from highest to lowest.  ``kind`` is
    ``"lex"`` (pure lexicographic) or ``"grevlex"`` (used internally for
    quotient-algebra computations).
    """

    __slots__ = ("permutation", "kind")

    def __init__(self, permutation, kind="lex"):
        if kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if len(set(permutation)) != len(permutation):
            raise ValueError("variable order has duplicates")
        self.permutation = tuple(permutation)
        self.kind = kind

    @classmethod
    def lex(cls, *names):
        return cls(names, "lex")

    def check(self, registry):
        if set(self.permutation) != set(registry) or len(registry) != len(self.permutation):
            raise RegistryMismatch(
                f"order {self.permutation} is not a permutation of {tuple(registry)}"
            )

    def positions(self, registry):
        """Indices into ``registry`` in order of decreasing significance."""
        self.check(registry)
        index = {v: i for i, v in enumerate(registry)}
        return [index[v] for v in self.permutation]

    def key(self, registry):
        """Sort key on exponent tuples; larger key = larger monomial."""
        pos = self.positions(registry)
        if self.kind == "lex":
            return lambda m: tuple(m[i] for i in pos)
        rev = pos[::-1]
        return lambda m: (sum(m),) + tuple(-m[i] for i in rev)

    def compare(self, registry, m1, m2):
        k = self.key(registry)
        a, b = k(m1), k(m2)
        return (a > b) - (a < b)

    def __eq__(self, other):
        return (
            isinstance(other, VarOrder)
            and self.permutation == other.permutation
            and self.kind == other.kind
        )

    def __hash__(self):
        return hash((self.permutation, self.kind))

    def __repr__(self):
        sep = " > "
        return f"VarOrder({self.kind}: {sep.join(self.permutation)})"


class MPoly:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms, vars):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise VariableCollision(f"duplicate variable in registry {vars}")
        n = len(vars)
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != n:
                raise DimensionMismatch(f"monomial {m} does not match registry {vars}")
            c = norm_coeff(c)
            if not _is_zero(c):
                clean[m] = c
        self.terms = clean
        self.vars = vars

    # construction ----------------------------------------------------------
    @classmethod
    def _make(cls, terms, vars):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.vars = vars
        return obj

    @classmethod
    def const(cls, c, vars):
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name, vars):
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariable(name)
        m = tuple(int(v == name) for v in vars)
        return cls._make({m: Fraction(1)}, vars)

    @classmethod
    def gens(cls, vars):
        return [cls.var(v, vars) for v in vars]

    def zero(self):
        return MPoly._make({}, self.vars)

    # queries ---------------------------------------------------------------
    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        """Maximum monomial degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name):
        i = self._index(name)
        return max((m[i] for m in self.terms), default=-1)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        """Constant term (0 when absent)."""
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    def is_rational(self):
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def depends_on(self, name):
        return self.degree_in(name) > 0

    def used_vars(self):
        return [v for i, v in enumerate(self.vars) if any(m[i] for m in self.terms)]

    def _index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(f"{name!r} is not in registry {self.vars}") from None

    def leading_term(self, order):
        key = order.key(self.vars)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def sorted_terms(self, order=None):
        if order is None:
            def key(m):
                return (sum(m),) + m
        else:
            key = order.key(self.vars)
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    # registry handling -----------------------------------------------------
    def with_vars(self, vars):
        """Re-embed into a registry containing every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        if len(set(vars)) != len(vars):
            raise VariableCollision(f"duplicate variable in registry {vars}")
        used = set(self.used_vars())
        missing = used - set(vars)
        if missing:
            raise UnknownVariable(f"variables {sorted(missing)} missing from {vars}")
        index = {v: i for i, v in enumerate(self.vars)}
        src = [index.get(v) for v in vars]
        out = {}
        for m, c in self.terms.items():
            out[tuple(m[i] if i is not None else 0 for i in src)] = c
        return MPoly._make(out, vars)

    def _other(self, g):
        if isinstance(g, MPoly):
            if g.vars != self.vars:
                raise RegistryMismatch(f"registries differ: {self.vars} vs {g.vars}")
            return g
        return MPoly.const(g, self.vars)

    # arithmetic ------------------------------------------------------------
    def __add__(self, g):
        g = self._other(g)
        out = dict(self.terms)
        for m, c in g.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = norm_coeff(v + c)
                if _is_zero(v):
                    del out[m]
                else:
                    out[m] = v
        return MPoly._make(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._make({m: -c for m, c in self.terms.items()}, self.vars)

    def __sub__(self, g):
        return self + (-self._other(g))

    def __rsub__(self, g):
        return self._other(g) - self

    def __mul__(self, g):
        if not isinstance(g, MPoly):
            c = norm_coeff(g)
            if _is_zero(c):
                return self.zero()
            return MPoly._make(
                {m: norm_coeff(v * c) for m, v in self.terms.items()}, self.vars
            )
        g = self._other(g)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in g.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return MPoly(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = MPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        return self * c

    def __truediv__(self, c):
        if isinstance(c, MPoly):
            if not c.is_constant():
                return exact_div(self, c)
            c = c.constant_value()
        if _is_zero(c):
            from .errors import DivisionByZero

            raise DivisionByZero("polynomial divided by zero")
        inv = 1 / as_felem(c) if isinstance(c, FElem) else 1 / Fraction(c)
        return self * inv

    def __eq__(self, g):
        if isinstance(g, MPoly):
            return self.vars == g.vars and self.terms == g.terms
        try:
            return self == MPoly.const(g, self.vars)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # calculus and substitution ------------------------------------------------
    def diff(self, name):
        return partial_derivative(self, name)

    def __call__(self, *values):
        if len(values) != self.nvars:
            raise DimensionMismatch(f"expected {self.nvars} values, got {len(values)}")
        return evaluate(self, dict(zip(self.vars, values)))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({self}; vars={','.join(self.vars)})"


def mp_arith(f, g, op):
    if not isinstance(f, MPoly) or not isinstance(g, MPoly):
        raise TypeError("mp_arith expects two MPoly operands")
    if f.vars != g.vars:
        raise RegistryMismatch(f"registries differ: {f.vars} vs {g.vars}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f, name):
    i = f._index(name)
    out = {}
    for m, c in f.terms.items():
        e = m[i]
        if e:
            mm = m[:i] + (e - 1,) + m[i + 1:]
            out[mm] = norm_coeff(c * e)
    return MPoly._make(out, f.vars)


def evaluate(f, at):
    """Substitute ``{name: value}``; a full assignment returns a scalar.

    Values must be rational (``Fraction``, int, decimal string) or ``FElem``.
    Partially assigned polynomials keep their registry.
    """
    idx = {}
    for name, val in at.items():
        i = f._index(name)
        if isinstance(val, FElem):
            idx[i] = norm_coeff(val)
        else:
            try:
                idx[i] = to_rat(val)
            except (TypeError, ValueError) as exc:
                raise NonRational(f"value for {name!r} is not rational: {val!r}") from exc
    out = {}
    powers = {}
    for m, c in f.terms.items():
        coeff = c
        mm = list(m)
        for i, v in idx.items():
            e = m[i]
            if e:
                key = (i, e)
                pw = powers.get(key)
                if pw is None:
                    pw = powers[key] = v**e
                coeff = coeff * pw
                mm[i] = 0
        mm = tuple(mm)
        prev = out.get(mm)
        out[mm] = coeff if prev is None else prev + coeff
    result = MPoly(out, f.vars)
    if len(idx) == f.nvars:
        return result.constant_value()
    return result


def compose(f, images):
    """Substitute polynomials ``images[name]`` for the variables of ``f``.

    Every image must share one registry; unmapped variables must be in it.
    """
    images = dict(images)
    if not images:
        return f
    target = next(iter(images.values())).vars
    for name in f.vars:
        if name not in images:
            images[name] = MPoly.var(name, target)
    result = MPoly.const(0, target)
    cache = {}
    for m, c in f.terms.items():
        term = MPoly.const(c, target)
        for name, e in zip(f.vars, m):
            if e:
                key = (name, e)
                pw = cache.get(key)
                if pw is None:
                    pw = cache[key] = images[name] ** e
                term = term * pw
        result = result + term
    return result


def homogenize(f, z):
    """Degree-graded lift ``p_d + z p_{d-1} + ... + z^d p_0`` with ``z`` appended last."""
    if z in f.vars:
        raise VariableCollision(f"homogenizing variable {z!r} already in {f.vars}")
    d = max(f.total_degree(), 0)
    out = {m + (d - sum(m),): c for m, c in f.terms.items()}
    return MPoly._make(out, f.vars + (z,))


def hessian(f):
    grads = [partial_derivative(f, v) for v in f.vars]
    n = f.nvars
    H = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            H[i][j] = H[j][i] = partial_derivative(grads[i], f.vars[j])
    return H


def exact_div(f, g):
    """Quotient ``f / g`` when ``g`` divides ``f`` exactly."""
    from .errors import DivisionByZero

    g = f._other(g)
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    order = VarOrder(f.vars, "lex")
    key = order.key(f.vars)
    lg, cg = g.leading_term(order)
    rem = f
    q = {}
    while rem.terms:
        m = max(rem.terms, key=key)
        c = rem.terms[m]
        if any(a < b for a, b in zip(m, lg)):
            raise ValueError("polynomial division is not exact")
        qm = tuple(a - b for a, b in zip(m, lg))
        qc = norm_coeff(c / cg)
        q[qm] = qc
        rem = rem - MPoly._make({qm: qc}, f.vars) * g
    return MPoly._make(q, f.vars)


def _det_bareiss(M):
    """Fraction-free determinant of a square matrix of MPoly."""
    n = len(M)
    if n == 0:
        raise NonSquare("empty matrix")
    A = [list(row) for row in M]
    vars = A[0][0].vars
    sign = 1
    prev = MPoly.const(1, vars)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for r in range(k + 1, n):
                if not A[r][k].is_zero():
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return MPoly.const(0, vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = exact_div(num, prev) if not prev.is_constant() else num / prev
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def principal_minors(H):
    """All nonempty principal minors, ordered by size then index set (1-based)."""
    n = len(H)
    if n == 0 or any(len(row) != n for row in H):
        raise NonSquare("principal minors need a non-empty square matrix")
    out = []
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            sub = [[H[i][j] for j in idx] for i in idx]
            out.append((tuple(i + 1 for i in idx), _det_bareiss(sub)))
    return out


# printing -----------------------------------------------------------------

def _rat_str(c):
    return str(c)


def _felem_is_monomial(c):
    if c._den != 1:
        return False
    coeffs = c.num.coefficients
    return len(coeffs) == 1


def _coeff_parts(c):
    """Return (negative?, magnitude-string or None for 1)."""
    if isinstance(c, Fraction):
        neg = c < 0
        mag = abs(c)
        return neg, (None if mag == 1 else _rat_str(mag))
    if _felem_is_monomial(c):
        (k, v), = c.num.coefficients.items()
        neg = v < 0
        mag = abs(v)
        wpart = "w" if k == 1 else f"w^{k}"
        return neg, (wpart if mag == 1 else f"{mag}*{wpart}")
    return False, f"({c})"


def _mono_str(m, vars):
    parts = []
    for v, e in zip(vars, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(f, order=None):
    """Human-readable, parseable rendering (graded order by default)."""
    if not f.terms:
        return "0"
    pieces = []
    for m, c in f.sorted_terms(order):
        neg, mag = _coeff_parts(c)
        mono = _mono_str(m, f.vars)
        if mono and mag:
            body = f"{mag}*{mono}"
        elif mono:
            body = mono
        else:
            body = mag if mag is not None else "1"
        pieces.append((neg, body))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
