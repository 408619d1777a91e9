"""Buchberger's algorithm over Q(w).

The public layer speaks :class:`MPoly` with ``FElem`` coefficients.  The
engine underneath is fraction-free: every polynomial is scaled into
Z[w][x] and kept primitive, so each coefficient is a single FLINT
``fmpz_poly``.  Working over Z[w] rather than Q(w) avoids a gcd per
coefficient operation, which dominates the cost otherwise.

Pair selection is the normal strategy (smallest lcm first) with the
Gebauer-Moller criteria; reducers are tried smallest leading monomial first.
"""

import heapq
from dataclasses import dataclass, field

from flint import fmpq_poly, fmpz_poly

from .arith import FElem
from .errors import NotASuffix, RegistryMismatch, ResourceLimit
from .mpoly import MPoly, VarOrder

_ONE = fmpz_poly([1])


@dataclass(frozen=True)
class Budget:
    """Limits for one Groebner computation; ``None`` means unlimited."""

    max_pairs: int | None = None
    max_coeff_degree: int | None = None


@dataclass
class GBStats:
    pairs: int = 0
    reductions: int = 0
    max_coeff_degree: int = 0


# -- monomial helpers on engine tuples ----------------------------------------

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mdiv(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mlcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mmul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _content(f):
    g = None
    for c in f.values():
        g = c if g is None else g.gcd(c)
        if g.degree() == 0 and abs(g[0]) == 1:
            return _ONE
    return g


class Engine:
    """Fraction-free polynomial kernel over Z[w] for one monomial order.

    Engine monomials are exponent tuples in registry order; ``key`` maps them
    to a sort key (larger is bigger).
    """

    def __init__(self, key, budget=None):
        self.key = key
        self.budget = budget or Budget()
        self.stats = GBStats()

    def lm(self, f):
        return max(f, key=self.key)

    def primitive(self, f):
        """Divide by the Z[w]-content; leading coefficient ends up with positive top term."""
        if not f:
            return f, _ONE
        g = _content(f)
        if f[self.lm(f)].leading_coefficient() < 0:
            g = -g
        if g == _ONE:
            return f, _ONE
        return {k: v // g for k, v in f.items()}, g

    def nf(self, f, G, tail_from=None):
        """Reduce ``f`` by ``G`` (list of (poly, lm), smallest lm first).

        Returns ``(r, a, c)`` with ``a*f == c*r`` modulo ``G``, ``r`` primitive.
        When ``tail_from`` is set, the leading monomial ``tail_from`` is kept.
        """
        key = self.key
        f = dict(f)
        heap = [(_neg(key(m)), m) for m in f]
        heapq.heapify(heap)
        rem = {}
        a_tot = _ONE
        skip = tail_from
        while heap:
            m = heapq.heappop(heap)[1]
            c = f.get(m)
            if c is None:
                continue
            if skip is not None and m == skip:
                skip = None
                rem[m] = f.pop(m)
                continue
            for g, lg in G:
                if _divides(lg, m):
                    break
            else:
                rem[m] = f.pop(m)
                continue
            del f[m]
            self.stats.reductions += 1
            lc = g[lg]
            h = lc.gcd(c)
            a = lc // h
            b = c // h
            if a != _ONE:
                a_tot = a_tot * a
                for k in f:
                    f[k] *= a
                for k in rem:
                    rem[k] *= a
            q = _mdiv(m, lg)
            for mg, cg in g.items():
                if mg == lg:
                    continue
                mm = _mmul(mg, q)
                v = f.get(mm)
                if v is None:
                    f[mm] = -b * cg
                    heapq.heappush(heap, (_neg(key(mm)), mm))
                else:
                    v = v - b * cg
                    if v == 0:
                        del f[mm]
                    else:
                        f[mm] = v
        r, c = self.primitive(rem)
        return r, a_tot, c

    def spoly(self, f, lf, g, lg):
        L = _mlcm(lf, lg)
        cf, cg = f[lf], g[lg]
        h = cf.gcd(cg)
        a = cg // h
        b = cf // h
        qf = _mdiv(L, lf)
        qg = _mdiv(L, lg)
        r = {}
        for m, c in f.items():
            if m != lf:
                r[_mmul(m, qf)] = a * c
        for m, c in g.items():
            if m == lg:
                continue
            mm = _mmul(m, qg)
            v = r.get(mm, 0) - b * c
            if v == 0:
                r.pop(mm, None)
            else:
                r[mm] = v
        return r

    def _sorted(self, polys):
        return sorted(((g, self.lm(g)) for g in polys), key=lambda gl: self.key(gl[1]))

    def _check_budget(self, h):
        deg = max(c.degree() for c in h.values())
        if deg > self.stats.max_coeff_degree:
            self.stats.max_coeff_degree = deg
        limit = self.budget.max_coeff_degree
        if limit is not None and deg > limit:
            raise ResourceLimit(
                f"coefficient degree in w reached {deg} (limit {limit})"
            )

    def groebner(self, F):
        """Reduced Groebner basis (primitive elements, ascending leading monomial)."""
        key = self.key
        F = [self.primitive(f)[0] for f in F if f]
        # interreduce the input so no two generators share a leading monomial
        while True:
            F1 = []
            for f in F:
                r = self.nf(f, self._sorted(F1))[0] if F1 else f
                if r:
                    F1.append(r)
            if F1 == F:
                break
            F = F1

        polys, lms, active, pairs = [], [], [], []

        def add(h):
            nonlocal pairs
            lh = self.lm(h)
            k = len(polys)
            cand = []
            for i in range(k):
                if active[i]:
                    L = _mlcm(lms[i], lh)
                    cand.append((L, i, _coprime(lms[i], lh)))
            # criterion M: drop pairs whose lcm is a proper multiple of another
            keep = [P for P in cand
                    if not any(_divides(Q[0], P[0]) and Q[0] != P[0] for Q in cand)]
            # criterion F: one pair per lcm, preferring a coprime one
            seen = {}
            for P in keep:
                if P[0] not in seen or P[2]:
                    seen[P[0]] = P
            # criterion B on the old pairs
            pairs = [pp for pp in pairs
                     if not (_divides(lh, pp[3])
                             and _mlcm(lms[pp[1]], lh) != pp[3]
                             and _mlcm(lms[pp[2]], lh) != pp[3])]
            for L, i, cop in seen.values():
                if not cop:
                    pairs.append((key(L), i, k, L))
            for i in range(k):
                if active[i] and _divides(lh, lms[i]):
                    active[i] = False
            polys.append(h)
            lms.append(lh)
            active.append(True)

        for f in F:
            add(f)
        max_pairs = self.budget.max_pairs
        while pairs:
            pairs.sort(key=lambda pp: pp[0], reverse=True)
            _, i, j, _L = pairs.pop()
            self.stats.pairs += 1
            if max_pairs is not None and self.stats.pairs > max_pairs:
                raise ResourceLimit(f"more than {max_pairs} S-pairs processed")
            s = self.spoly(polys[i], lms[i], polys[j], lms[j])
            reducers = self._sorted(polys[k] for k in range(len(polys)) if active[k])
            h = self.nf(s, reducers)[0]
            if h:
                self._check_budget(h)
                add(h)

        basis = sorted((polys[k] for k in range(len(polys)) if active[k]),
                       key=lambda f: key(self.lm(f)))
        minimal = []
        for b in basis:
            if not any(_divides(self.lm(o), self.lm(b)) for o in minimal):
                minimal.append(b)
        out = []
        for b in minimal:
            others = self._sorted(o for o in minimal if o is not b)
            out.append(self.nf(b, others, tail_from=self.lm(b))[0] if others else b)
        return out


def _neg(k):
    return tuple(-e for e in k)


# -- conversion between MPoly and engine form ---------------------------------

def to_engine(f):
    """Clear denominators: return (dict mono -> fmpz_poly, scale) with f == poly/scale.

    ``scale`` is an ``FElem``.
    """
    if f.is_zero():
        return {}, FElem(1)
    dens = []
    for c in f.terms.values():
        if isinstance(c, FElem):
            dens.append(c._den)
    L = _ONE
    for d in dens:
        g = L.gcd(d)
        L = L * (d // g)
    Lq = fmpq_poly(L)
    nums = {}
    for m, c in f.terms.items():
        if isinstance(c, FElem):
            nums[m] = c._num * fmpq_poly(L // c._den)
        else:
            nums[m] = Lq * c.numerator / c.denominator
    den = 1
    for v in nums.values():
        den = _ilcm(den, int(v.denom()))
    out = {m: (v * den).numer() for m, v in nums.items()}
    return out, FElem(Lq * den)


def _ilcm(a, b):
    from math import gcd

    return a * b // gcd(a, b)


def from_engine(d, vars, scale=None, monic_key=None):
    """Rebuild an MPoly from engine form, dividing by ``scale`` or making it monic."""
    if not d:
        return MPoly({}, vars)
    if monic_key is not None:
        lmono = max(d, key=monic_key)
        lc = d[lmono]
        return MPoly({m: FElem.from_fmpz(c, lc) for m, c in d.items()}, vars)
    if scale is None:
        return MPoly({m: FElem.from_fmpz(c, _ONE) for m, c in d.items()}, vars)
    return MPoly({m: FElem.from_fmpz(c, _ONE) / scale for m, c in d.items()}, vars)


# -- public objects -----------------------------------------------------------

class IdealSpec:
    """Generators over Q(w) sharing one registry, with a monomial order."""

    def __init__(self, generators, order):
        gens = list(generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        vars = gens[0].vars
        for g in gens:
            if g.vars != vars:
                raise RegistryMismatch(f"generator registries differ: {vars} vs {g.vars}")
        order.check(vars)
        self.generators = gens
        self.order = order

    @property
    def vars(self):
        return self.generators[0].vars

    def __repr__(self):
        return f"IdealSpec({[str(g) for g in self.generators]}, {self.order})"


@dataclass
class GroebnerBasis:
    """Reduced basis: monic elements sorted by increasing leading monomial."""

    elements: list
    order: VarOrder
    reduced: bool = True
    stats: GBStats = field(default_factory=GBStats, compare=False)

    @property
    def vars(self):
        return self.elements[0].vars if self.elements else ()

    def leading_monomials(self):
        return [g.leading_term(self.order)[0] for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.elements) + "]"


def normal_form(f, G, order):
    """Remainder of ``f`` on division by ``G`` under ``order`` (exact, over Q(w))."""
    for g in G:
        if g.vars != f.vars:
            raise RegistryMismatch(f"registries differ: {f.vars} vs {g.vars}")
    if f.is_zero():
        return f
    eng = Engine(order.key(f.vars))
    F, fs = to_engine(f)
    Gs = []
    for g in G:
        if not g.is_zero():
            Gs.append(to_engine(g)[0])
    r, a, c = eng.nf(F, eng._sorted(Gs))
    if not r:
        return MPoly({}, f.vars)
    # a*F == c*r and f == F/fs, so nf(f) == c*r/(a*fs)
    factor = FElem.from_fmpz(c, a) / fs
    return from_engine(r, f.vars, scale=1 / factor)


def buchberger(I, budget=None):
    """Reduced Groebner basis of ``I`` under its order."""
    vars = I.vars
    key = I.order.key(vars)
    eng = Engine(key, budget)
    basis = eng.groebner([to_engine(g)[0] for g in I.generators])
    elements = [from_engine(b, vars, monic_key=key) for b in basis]
    return GroebnerBasis(elements, I.order, True, eng.stats)


def eliminate(G, keep):
    """Basis elements that involve only ``keep`` (a lowest block of a lex order)."""
    keep = set(keep)
    perm = G.order.permutation
    if G.order.kind != "lex" or not keep <= set(perm) or set(perm[len(perm) - len(keep):]) != keep:
        raise NotASuffix(f"{sorted(keep)} is not a trailing block of {perm}")
    drop = [i for i, v in enumerate(G.vars) if v not in keep]
    return [g for g in G.elements if all(m[i] == 0 for m in g.terms for i in drop)]


@dataclass
class ShapeResult:
    ok: bool
    theta: MPoly | None = None
    params: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def shape_position(G):
    """Test ``[theta(x1), x2 - theta_2(x1), ..., s - theta_{n+1}(x1)]``.

    The lowest variable of the lex order plays the role of ``x1``.  On
    success ``params`` maps each other variable to its polynomial in ``x1``.
    """
    perm = G.order.permutation
    if G.order.kind != "lex" or not G.elements:
        return ShapeResult(False)
    vars = G.vars
    low = perm[-1]
    li = vars.index(low)
    others = perm[:-1]
    if len(G.elements) != len(perm):
        return ShapeResult(False)
    theta = None
    params = {}
    for g in G.elements:
        lm, _ = g.leading_term(G.order)
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 1 and nz[0] == li:
            if theta is not None or any(any(e for i, e in enumerate(m) if i != li) for m in g.terms):
                return ShapeResult(False)
            theta = g
            continue
        if len(nz) != 1 or lm[nz[0]] != 1:
            return ShapeResult(False)
        v = vars[nz[0]]
        rest = g - MPoly.var(v, vars)
        if any(any(e for i, e in enumerate(m) if i != li) for m in rest.terms):
            return ShapeResult(False)
        params[v] = -rest
    if theta is None or set(params) != set(others):
        return ShapeResult(False)
    return ShapeResult(True, theta, params)
