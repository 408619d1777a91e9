"""Independent cross-checks for the test suite.

Nothing here uses tangency polynomials or Sturm sequences.  The sampling
falsifier evaluates exactly, so a witness it returns is a proof that the
polynomial dips below the reported value; finding nothing proves nothing.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import MultivariateInput, NonRational, NotSquareFree
from .mpoly import MPoly, Point, evaluate
from .upoly import UPoly, upoly_gcd


def _increasing(xs):
    return all(a < b for a, b in zip(xs, xs[1:]))


@dataclass(frozen=True)
class SamplingPlan:
    radii: tuple = tuple(Fraction(10) ** k for k in range(1, 8))
    grid_density: int = 5
    threshold_schedule: tuple = tuple(Fraction(10) ** k for k in range(1, 7))
    hyperbola_constants: tuple = (Fraction(1), Fraction(1, 2), Fraction(2))

    def __post_init__(self):
        radii = tuple(Fraction(r) for r in self.radii)
        ths = tuple(Fraction(m) for m in self.threshold_schedule)
        if not radii or not ths:
            raise ValueError("radii and threshold schedule must be nonempty")
        if any(r <= 0 for r in radii) or any(m <= 0 for m in ths):
            raise ValueError("radii and thresholds must be positive")
        if not _increasing(radii) or not _increasing(ths):
            raise ValueError("radii and thresholds must be increasing")
        if self.grid_density < 2:
            raise ValueError("grid_density must be at least 2")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "threshold_schedule", ths)


def _candidates(n, plan):
    signs = (1, -1)
    for r in plan.radii:
        # coordinate rays
        for i in range(n):
            for s in signs:
                pt = [Fraction(0)] * n
                pt[i] = s * r
                yield pt
        # diagonals
        for pattern in product(signs, repeat=n):
            yield [s * r for s in pattern]
        # hyperbola-like valleys: x_i = +-r, x_j = +-c/r
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for c in plan.hyperbola_constants:
                    for si, sj in product(signs, repeat=2):
                        pt = [Fraction(0)] * n
                        pt[i] = si * r
                        pt[j] = sj * c / r
                        yield pt
        # grid on the cube [-r, r]^n
        g = plan.grid_density
        axis = [-r + 2 * r * k / (g - 1) for k in range(g)]
        for pt in product(axis, repeat=n):
            yield list(pt)


def find_unbounded_witness(p, plan=None):
    """Exact point beating the largest threshold in the schedule, or ``None``.

    Returns ``(point, value)`` with ``value < -M`` for the largest ``M`` of
    ``plan.threshold_schedule`` that any sampled point beats.
    """
    if not p.is_rational():
        raise NonRational("the falsifier works over the rationals only")
    plan = plan or SamplingPlan()
    if p.is_constant():
        return None
    best = None
    for pt in _candidates(p.nvars, plan):
        val = evaluate(p, dict(zip(p.vars, pt)))
        if best is None or val < best[1]:
            best = (pt, val)
    beaten = [m for m in plan.threshold_schedule if best[1] < -m]
    if not beaten:
        return None
    return Point(best[0]), best[1]


def univariate_lower_bounded(p):
    """Classical criterion: constant, or even degree with positive leading coefficient."""
    if not isinstance(p, MPoly):
        raise TypeError("expected an MPoly")
    used = p.used_vars()
    if len(used) > 1:
        raise MultivariateInput(f"{p} involves {len(used)} variables")
    if not p.is_rational():
        raise NonRational("expected rational coefficients")
    if not used:
        return True
    f = UPoly.from_mpoly(p, used[0])
    return f.degree() % 2 == 0 and f.lc() > 0


# -- root counting without Sturm sequences ------------------------------------------

def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _horner(cs, x):
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _descartes(cs):
    nz = [c for c in cs if c]
    return sum(1 for a, b in zip(nz, nz[1:]) if (a > 0) != (b > 0))


def _moebius(cs, lo, hi):
    """Coefficients of ``(1+y)^d f((lo + hi*y)/(1+y))``; maps ``(0, oo)`` onto ``(lo, hi)``."""
    d = len(cs) - 1
    out = [Fraction(0)] * (d + 1)
    for k, c in enumerate(cs):
        if not c:
            continue
        term = [c]
        for _ in range(k):
            term = _pmul(term, [lo, hi])
        for _ in range(d - k):
            term = _pmul(term, [Fraction(1), Fraction(1)])
        for i, x in enumerate(term):
            out[i] += x
    return out


def _count(cs, lo, hi):
    v = _descartes(_moebius(cs, lo, hi))
    if v <= 1:
        return v
    mid = (lo + hi) / 2
    return _count(cs, lo, mid) + _count(cs, mid, hi) + (1 if _horner(cs, mid) == 0 else 0)


def naive_real_root_count(phi, lo, hi):
    """Number of real roots of ``phi`` in the open interval ``(lo, hi)``.

    Bisection driven by Descartes' rule of signs on Moebius-transformed
    coefficients, all in exact rationals.
    """
    if isinstance(phi, UPoly):
        if not phi.is_rational():
            raise NonRational("naive root counting needs w-free coefficients")
        f = phi
        cs = [c.to_rat() for c in phi.coeffs]
    else:
        cs = [Fraction(c) for c in phi]
        while cs and cs[-1] == 0:
            cs.pop()
        f = UPoly(cs)
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if not cs:
        raise NotSquareFree("the zero polynomial has every number as a root")
    if len(cs) == 1:
        return 0
    if upoly_gcd(f, f.derivative()).degree() > 0:
        raise NotSquareFree(f"{f} has a repeated factor")
    return _count(cs, lo, hi)
