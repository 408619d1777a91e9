"""Tangency systems, the value polynomial phi and the T-goodness test.

For a point ``a`` the tangency system is

    Phi_i = (x_i - a_i) dp/dx_n - (x_n - a_n) dp/dx_i      (i < n)
    Phi_n = w * sum_j (x_j - a_j)^2 - 1

and ``phi`` is the square-free generator of the values ``p`` takes on its
solutions with ``dp/dx_n != 0``.  ``theta`` is the analogous polynomial in
``x1``.  Condition (C) asks ``deg theta == deg phi`` and that the lex basis of
the localized ideal is in shape position.

Two routes compute the same objects.  ``method="quotient"`` works in the
finite-dimensional algebra of the tangency ideal (fast, the default);
``method="buchberger"`` runs lex Buchberger on the ideals as written, which
is only practical for small inputs and serves as a cross-check.
"""

import time
from dataclasses import dataclass, field

from .arith import FElem
from .errors import (
    ConstantPolynomial,
    DimensionMismatch,
    NonRational,
    NotGeneric,
    ZeroEliminationIdeal,
)
from .groebner import Budget, GroebnerBasis, IdealSpec, buchberger, eliminate, shape_position
from .mpoly import MPoly, Point, VarOrder, partial_derivative
from .quotient import (
    LocalizedAlgebra,
    PlainAlgebra,
    QuotientAlgebra,
    lex_basis,
    minimal_polynomial,
)
from .upoly import UPoly, square_free_part

__all__ = [
    "TangencySystem",
    "TangencyReport",
    "UPoly",
    "build_tangency_system",
    "build_ideal_I",
    "build_ideal_J",
    "square_free_part",
    "compute_phi",
    "compute_theta",
    "test_condition_C",
]


@dataclass
class TangencySystem:
    phis: list
    p: MPoly
    a: Point


@dataclass
class TangencyReport:
    point: Point
    phi: UPoly
    theta: UPoly
    t_good: bool
    shape_basis: GroebnerBasis | None = None
    timings: dict = field(default_factory=dict)
    algebra_dim: int | None = None
    stats: dict = field(default_factory=dict)


def fresh_name(base, taken):
    name = base
    while name in taken:
        name += "_"
    return name


def _check_input(p, a):
    if not p.is_rational():
        raise NonRational("the input polynomial must have rational coefficients")
    if p.is_constant():
        raise ConstantPolynomial(f"{p} is constant")
    a = Point(a)
    if len(a) != p.nvars:
        raise DimensionMismatch(f"point has {len(a)} coordinates, polynomial has {p.nvars} variables")
    return a


def build_tangency_system(p, a):
    a = _check_input(p, a)
    X = p.vars
    xn = X[-1]
    gens = MPoly.gens(X)
    dn = partial_derivative(p, xn)
    phis = []
    for i in range(len(X) - 1):
        di = partial_derivative(p, X[i])
        phis.append((gens[i] - a[i]) * dn - (gens[-1] - a[-1]) * di)
    sphere = MPoly.const(0, X)
    for g, ai in zip(gens, a):
        sphere = sphere + (g - ai) ** 2
    phis.append(sphere * FElem.w() - 1)
    return TangencySystem(phis, p, a)


def _names(p):
    s = fresh_name("s", p.vars)
    t = fresh_name("t", p.vars + (s,))
    return s, t


def build_ideal_I(p, a):
    """``<p - t, Phi_1..Phi_n, s*dp/dx_n - 1>`` with lex ``s > x1 > ... > xn > t``."""
    system = build_tangency_system(p, a)
    s, t = _names(p)
    R = (s,) + p.vars + (t,)
    S, T = MPoly.var(s, R), MPoly.var(t, R)
    gens = [p.with_vars(R) - T]
    gens += [f.with_vars(R) for f in system.phis]
    gens.append(S * partial_derivative(p, p.vars[-1]).with_vars(R) - 1)
    return IdealSpec(gens, VarOrder(R, "lex"))


def build_ideal_J(p, a):
    """``<Phi_1..Phi_n, s*dp/dx_n - 1>`` with lex ``s > xn > ... > x1``."""
    system = build_tangency_system(p, a)
    s, _ = _names(p)
    R = (s,) + p.vars
    S = MPoly.var(s, R)
    gens = [f.with_vars(R) for f in system.phis]
    gens.append(S * partial_derivative(p, p.vars[-1]).with_vars(R) - 1)
    return IdealSpec(gens, VarOrder((s,) + p.vars[::-1], "lex"))


def _require_derivative(p):
    if partial_derivative(p, p.vars[-1]).is_zero():
        raise NotGeneric(
            f"{p} does not depend on {p.vars[-1]}; apply a linear change of variables first"
        )


# -- quotient route ---------------------------------------------------------------

class _Tangency:
    """Shared algebra for one (p, a): phi and theta come from the same object."""

    def __init__(self, p, a, budget=None):
        self.p = p
        self.a = _check_input(p, a)
        _require_derivative(p)
        self.s, self.t = _names(p)
        system = build_tangency_system(p, self.a)
        d = partial_derivative(p, p.vars[-1])
        A = QuotientAlgebra(system.phis, p.vars, budget)
        if A.zero_dimensional:
            self.alg = LocalizedAlgebra(A, d, self.s)
            self.dim = A.dim
            self.stats = A.engine.stats
        else:
            # the tangency set has a positive-dimensional piece; invert d directly
            R = (self.s,) + p.vars
            inv = MPoly.var(self.s, R) * d.with_vars(R) - 1
            A2 = QuotientAlgebra([f.with_vars(R) for f in system.phis] + [inv], R, budget)
            if not A2.zero_dimensional:
                raise NotGeneric(f"infinitely many non-critical tangency points at {self.a}")
            self.alg = PlainAlgebra(A2)
            self.dim = A2.dim
            self.stats = A2.engine.stats

    def phi_bar(self):
        return minimal_polynomial(self.alg, self.p, self.t)

    def basis_J(self):
        R = (self.s,) + self.p.vars
        order = VarOrder((self.s,) + self.p.vars[::-1], "lex")
        elements = lex_basis(self.alg, order.permutation, R)
        return GroebnerBasis(elements, order, True)


# -- public operations ----------------------------------------------------------

def _phi_from_basis(G, t):
    elim = eliminate(G, [t])
    if not elim:
        raise ZeroEliminationIdeal("no univariate polynomial in t: the point is not generic")
    return UPoly.from_mpoly(elim[0], t)


def _theta_from_basis(G, x1):
    elim = eliminate(G, [x1])
    if not elim:
        raise ZeroEliminationIdeal(f"no univariate polynomial in {x1}: the point is not generic")
    return UPoly.from_mpoly(elim[0], x1)


def compute_phi(p, a, method="quotient", budget=None):
    """Square-free value polynomial in ``t`` (canonical form)."""
    if method == "quotient":
        return square_free_part(_Tangency(p, a, budget).phi_bar())
    if method in ("buchberger", "lex"):
        _check_input(p, a)
        _require_derivative(p)
        I = build_ideal_I(p, a)
        G = buchberger(I, budget)
        return square_free_part(_phi_from_basis(G, I.order.permutation[-1]))
    raise ValueError(f"unknown method {method!r}")


def compute_theta(p, a, method="quotient", budget=None):
    """``(theta, G)``: square-free generator in ``x1`` and the reduced lex basis of J."""
    if method == "quotient":
        G = _Tangency(p, a, budget).basis_J()
    elif method in ("buchberger", "lex"):
        _check_input(p, a)
        _require_derivative(p)
        G = buchberger(build_ideal_J(p, a), budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    return square_free_part(_theta_from_basis(G, p.vars[0])), G


def _is_unit(G):
    return len(G.elements) == 1 and G.elements[0].is_constant()


def test_condition_C(p, a, method="quotient", budget=None):
    """Run the (C) test at ``a``; the report carries phi whatever the verdict."""
    timings = {}
    if method == "quotient":
        t0 = time.perf_counter()
        tg = _Tangency(p, a, budget)
        timings["algebra"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        phi = square_free_part(tg.phi_bar())
        timings["phi"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        G = tg.basis_J()
        theta = square_free_part(_theta_from_basis(G, p.vars[0]))
        timings["theta"] = time.perf_counter() - t0
        dim = tg.dim
        point = tg.a
        stats = tg.stats
    else:
        point = _check_input(p, a)
        t0 = time.perf_counter()
        phi = compute_phi(p, a, method, budget)
        timings["phi"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        theta, G = compute_theta(p, a, method, budget)
        timings["theta"] = time.perf_counter() - t0
        dim = None
        stats = G.stats
    if _is_unit(G):
        # no non-critical tangency points at all: injectivity holds vacuously
        t_good = True
    else:
        t_good = theta.degree() == phi.degree() and shape_position(G).ok
    kernel = {
        "pairs": stats.pairs,
        "reductions": stats.reductions,
        "max_coeff_degree": stats.max_coeff_degree,
    }
    return TangencyReport(point, phi, theta, t_good, G, timings, dim, kernel)


test_condition_C.__test__ = False
