import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from polybound import FElem, MPoly, VarOrder
from polybound.errors import NotASuffix, RegistryMismatch, ResourceLimit
from polybound.groebner import (
    Budget,
    GroebnerBasis,
    IdealSpec,
    buchberger,
    eliminate,
    normal_form,
    shape_position,
)

from conftest import P, W


def to_sympy(f):
    return sp.sympify(str(f).replace("^", "**"))


def monic_sympy(exprs, syms, domain):
    return sorted(str(sp.Poly(e, *syms, domain=domain).monic().as_expr()) for e in exprs)


def spoly(f, g, order):
    (mf, cf), (mg, cg) = f.leading_term(order), g.leading_term(order)
    lcm = tuple(max(a, b) for a, b in zip(mf, mg))
    uf = MPoly({tuple(a - b for a, b in zip(lcm, mf)): 1 / FElem(cf)}, f.vars)
    ug = MPoly({tuple(a - b for a, b in zip(lcm, mg)): 1 / FElem(cg)}, f.vars)
    return uf * f - ug * g


def check_postconditions(gens, G):
    order = G.order
    els = G.elements
    for g in gens:
        assert normal_form(g, els, order).is_zero()
    for i, f in enumerate(els):
        for g in els[i + 1:]:
            assert normal_form(spoly(f, g, order), els, order).is_zero()
    lms = G.leading_monomials()
    for i, f in enumerate(els):
        assert f.leading_term(order)[1] == 1
        for j, lm in enumerate(lms):
            if i != j:
                assert not any(all(a >= b for a, b in zip(m, lm)) for m in f.terms)


def random_ideal(rng, with_w=False):
    n = rng.randint(1, 3)
    vars = tuple(f"x{i + 1}" for i in range(n))
    gens = []
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(1, 3)
        terms = {}
        for _ in range(rng.randint(1, 4)):
            while True:
                m = tuple(rng.randint(0, deg) for _ in range(n))
                if sum(m) <= deg:
                    break
            c = Fraction(rng.randint(-5, 5))
            if with_w and rng.random() < 0.3:
                c = c * W + rng.randint(-2, 2)
            terms[m] = c
        g = MPoly(terms, vars)
        if not g.is_zero():
            gens.append(g)
    return vars, gens or [MPoly.var(vars[0], vars)]


class TestNormalForm:
    def test_divisible(self):
        assert normal_form(P("x1^2"), [P("x1")], VarOrder(("x1",))).is_zero()

    def test_one_step(self):
        X = ("x1", "x2")
        r = normal_form(P("x1^2*x2", X), [P("x1^2 - 1", X)], VarOrder(X))
        assert r == P("x2", X)

    def test_substitution(self):
        X = ("x1", "x2")
        r = normal_form(P("x1*x2 - 1"), [P("x1 - x2")], VarOrder(X))
        assert r == P("x2^2 - 1", X)

    def test_over_q_w(self):
        X = ("x1",)
        f = MPoly({(2,): W}, X)
        g = MPoly({(1,): 2 * W, (0,): -1}, X)
        # x1 = 1/(2w), so w*x1^2 = 1/(4w)
        assert normal_form(f, [g], VarOrder(X)) == MPoly.const(1 / (4 * W), X)

    def test_registry_mismatch(self):
        with pytest.raises(RegistryMismatch):
            normal_form(P("x1"), [P("x2")], VarOrder(("x1",)))


class TestBuchberger:
    def test_already_reduced(self):
        X = ("x1", "x2")
        G = buchberger(IdealSpec([P("x1", X), P("x2", X)], VarOrder(X)))
        assert set(map(str, G)) == {"x1", "x2"}

    def test_small_system(self):
        X = ("x1", "x2")
        G = buchberger(IdealSpec([P("x1^2 - 1", X), P("x1*x2 - 1", X)], VarOrder(X)))
        assert [str(g) for g in G] == ["x2^2 - 1", "x1 - x2"]

    def test_unit_ideal(self):
        X = ("x1",)
        G = buchberger(IdealSpec([P("x1"), P("x1 + 1")], VarOrder(X)))
        assert [str(g) for g in G] == ["1"]

    def test_line_and_sphere(self):
        # linear tangency system through (1,3): x2 = 4 - x1, sphere 2w(x1-1)^2 = 1
        R = ("s", "x1", "x2")
        s, x1, x2 = MPoly.gens(R)
        gens = [-x1 - x2 + 4, W * ((x1 - 1) ** 2 + (x2 - 3) ** 2) - 1, -s - 1]
        order = VarOrder(("s", "x2", "x1"))
        G = buchberger(IdealSpec(gens, order))
        assert G.elements == [
            x1**2 - 2 * x1 + (2 * W - 1) / (2 * W),
            x1 + x2 - 4,
            s + 1,
        ]
        check_postconditions(gens, G)
        # independent oracle: sympy over QQ(w)
        w = sp.Symbol("w")
        syms = sp.symbols("s x2 x1")
        dom = sp.QQ.frac_field(w)
        ref = sp.groebner([to_sympy(g) for g in gens], *syms, order="lex", domain=dom)
        assert monic_sympy([to_sympy(g) for g in G], syms, dom) == monic_sympy(ref.exprs, syms, dom)

    def test_deterministic(self):
        rng = random.Random(7)
        vars, gens = random_ideal(rng, with_w=True)
        I = IdealSpec(gens, VarOrder(vars))
        assert buchberger(I).elements == buchberger(I).elements

    def test_budget(self):
        X = ("x1", "x2", "x3")
        gens = [P("x1^3 - x2*x3 + 1", X), P("x2^3 - x1*x3 - 2", X), P("x3^3 - x1*x2 + 3", X)]
        with pytest.raises(ResourceLimit):
            buchberger(IdealSpec(gens, VarOrder(X)), Budget(max_pairs=2))

    def test_ideal_spec_validation(self):
        with pytest.raises(ValueError):
            IdealSpec([], VarOrder(("x1",)))
        with pytest.raises(RegistryMismatch):
            IdealSpec([P("x1"), P("x2")], VarOrder(("x1",)))

    @given(st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_matches_sympy_over_q(self, seed):
        vars, gens = random_ideal(random.Random(seed))
        order = VarOrder(vars)
        G = buchberger(IdealSpec(gens, order), Budget(max_pairs=5000))
        check_postconditions(gens, G)
        syms = sp.symbols(vars)
        ref = sp.groebner([to_sympy(g) for g in gens], *syms, order="lex")
        assert monic_sympy([to_sympy(g) for g in G], syms, "QQ") == monic_sympy(ref.exprs, syms, "QQ")

    @given(st.integers(0, 10**6))
    @settings(max_examples=15, deadline=None)
    def test_postconditions_over_q_w(self, seed):
        vars, gens = random_ideal(random.Random(seed), with_w=True)
        G = buchberger(IdealSpec(gens, VarOrder(vars)), Budget(max_pairs=5000))
        check_postconditions(gens, G)


class TestEliminate:
    def basis(self, *texts, order):
        vars = tuple(sorted(order))
        return buchberger(IdealSpec([P(t, vars) for t in texts], VarOrder(order)))

    def test_keeps_univariate(self):
        G = self.basis("x1", "x2", order=("x1", "x2"))
        assert [str(g) for g in eliminate(G, ["x2"])] == ["x2"]

    def test_empty_elimination(self):
        G = self.basis("x1*x2 - 1", order=("x1", "x2"))
        assert eliminate(G, ["x2"]) == []

    def test_not_a_suffix(self):
        G = self.basis("x1", "x2", order=("x1", "x2"))
        with pytest.raises(NotASuffix):
            eliminate(G, ["x1"])
        with pytest.raises(NotASuffix):
            eliminate(G, ["y"])

    def test_elimination_property(self):
        G = self.basis("x1^2 + x2^2 - 5", "x1 - x2 - 1", order=("x1", "x2"))
        (h,) = eliminate(G, ["x2"])
        assert h == P("x2^2 + x2 - 2", ("x1", "x2"))


class TestShapePosition:
    def test_shape(self):
        R = ("s", "x1", "x2")
        s, x1, x2 = MPoly.gens(R)
        theta = x1**2 - 2 * x1 + (2 * W - 1) / (2 * W)
        G = GroebnerBasis([theta, x1 + x2 - 4, s + 1], VarOrder(("s", "x2", "x1")))
        res = shape_position(G)
        assert res and res.theta == theta
        assert res.params == {"x2": 4 - x1, "s": MPoly.const(-1, R)}

    def test_not_parametrised(self):
        X = ("x1", "x2")
        G = GroebnerBasis([P("x1^2 - 1", X), P("x2^2 - 1", X)], VarOrder(("x2", "x1")))
        assert not shape_position(G)

    def test_single_point(self):
        R = ("s", "x1", "x2")
        G = GroebnerBasis([P(t, R) for t in ("x1 - 1", "x2 - 1", "s - 1")], VarOrder(("s", "x2", "x1")))
        res = shape_position(G)
        assert res.ok and res.params == {"x2": MPoly.const(1, R), "s": MPoly.const(1, R)}

    def test_wrong_kind(self):
        X = ("x1",)
        assert not shape_position(GroebnerBasis([P("x1")], VarOrder(X, "grevlex")))
