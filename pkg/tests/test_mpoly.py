from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polybound import FElem, MPoly, Point, VarOrder
from polybound.errors import (
    DimensionMismatch,
    NonRational,
    NonSquare,
    RegistryMismatch,
    UnknownVariable,
    VariableCollision,
)
from polybound.mpoly import (
    compose,
    evaluate,
    exact_div,
    hessian,
    homogenize,
    mp_arith,
    partial_derivative,
    principal_minors,
)

from conftest import MOTZKIN, P, Q, W

X = ("x1", "x2")
x1, x2 = MPoly.gens(X)


def polys(vars=X, max_terms=5, max_deg=4):
    n = len(vars)
    mono = st.tuples(*[st.integers(0, max_deg)] * n)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda d: MPoly(d, vars))


class TestArithmetic:
    def test_add(self):
        assert mp_arith(x1, x2, "add") == P("x1 + x2")

    def test_difference_of_squares(self):
        assert mp_arith(x1 - x2, x1 + x2, "mul") == x1**2 - x2**2

    def test_expand_square(self):
        got = mp_arith((x1 * x2 - 1) ** 2, x2**2, "add")
        assert got == x1**2 * x2**2 - 2 * x1 * x2 + x2**2 + 1
        assert str(got) == "x1^2*x2^2 - 2*x1*x2 + x2^2 + 1"

    def test_registry_mismatch(self):
        y = MPoly.var("y", ("y",))
        with pytest.raises(RegistryMismatch):
            mp_arith(x1, y, "add")
        with pytest.raises(RegistryMismatch):
            x1 + y

    def test_no_zero_terms(self):
        f = x1 - x1
        assert f.is_zero() and f.terms == {} and f.total_degree() == -1

    def test_felem_coefficients(self):
        f = W * x1 + 1
        assert not f.is_rational()
        assert (f - W * x1).is_rational()
        assert str(W * x1 + (W + 1) / (2 - W) * x2) == "w*x1 + ((w + 1)/(-w + 2))*x2"

    def test_exact_division(self):
        assert exact_div(x1**2 - x2**2, x1 - x2) == x1 + x2
        with pytest.raises(ValueError):
            exact_div(x1**2 + 1, x1 - x2)

    def test_duplicate_registry(self):
        with pytest.raises(VariableCollision):
            MPoly({(1, 0): 1}, ("x", "x"))
        with pytest.raises(DimensionMismatch):
            MPoly({(1,): 1}, X)

    @given(polys(), polys(), polys())
    @settings(max_examples=40)
    def test_ring_laws(self, f, g, h):
        assert f * (g + h) == f * g + f * h
        assert (f + g) - g == f
        assert f * g == g * f


class TestCalculus:
    def test_partial(self):
        assert partial_derivative(x1 * x2**2, "x2") == 2 * x1 * x2

    def test_chain_rule_case(self):
        q = P(Q)
        assert partial_derivative(q, "x2") == 2 * x1 * (x1 * x2 - 1) + 2 * x2

    def test_constant_derivative(self):
        assert partial_derivative(x1 - x2, "x2") == MPoly.const(-1, X)

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            partial_derivative(x1, "x3")

    @given(polys(), polys())
    @settings(max_examples=40)
    def test_linearity_and_product_rule(self, f, g):
        d = lambda h: partial_derivative(h, "x1")  # noqa: E731
        assert d(f + g) == d(f) + d(g)
        assert d(f * g) == d(f) * g + f * d(g)


class TestEvaluate:
    def test_full_assignment_is_scalar(self):
        assert evaluate(x1 + x2, {"x1": 1, "x2": 3}) == 4

    def test_partial_assignment_keeps_registry(self):
        f = evaluate(x1 * x2 + x2, {"x1": 2})
        assert f == 3 * x2 and f.vars == X

    def test_centered_sphere(self):
        sphere = W * (x1**2 + x2**2) - 1
        assert compose(sphere, {"x1": x1 - 0, "x2": x2 - 0}) == sphere

    def test_irrational_rejected(self):
        with pytest.raises(NonRational):
            evaluate(x1 - x2, {"x1": 2**0.5})
        with pytest.raises(NonRational):
            Point([2**0.5, 1])

    def test_felem_value(self):
        assert evaluate(x1**2, {"x1": W, "x2": 0}) == W**2

    def test_call(self):
        assert P(Q)(1, 3) == 13
        with pytest.raises(DimensionMismatch):
            P(Q)(1)

    def test_point_parse(self):
        assert Point.parse("1, -3/2, 0.5") == (1, Fraction(-3, 2), Fraction(1, 2))
        assert str(Point((1, Fraction(1, 2)))) == "1,1/2"


class TestHomogenize:
    def test_quadratic(self):
        f = P("x1^2 + x2^2 - 3*x1*x2 + 1")
        h = homogenize(f, "x3")
        assert h == P("x1^2 + x2^2 - 3*x1*x2 + x3^2", ("x1", "x2", "x3"))

    def test_constant(self):
        h = homogenize(MPoly.const(5, X), "z")
        assert h.is_constant() and h.constant_value() == 5

    def test_sextic(self):
        h = homogenize(P(MOTZKIN), "z")
        assert h == P("x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2*z^2 + z^6", X + ("z",))

    def test_collision(self):
        with pytest.raises(VariableCollision):
            homogenize(x1, "x2")

    @given(polys())
    @settings(max_examples=40)
    def test_dehomogenize_and_degree(self, f):
        h = homogenize(f, "z")
        assert h.is_homogeneous()
        assert evaluate(h, {"z": 1}).with_vars(X + ("z",)) == f.with_vars(X + ("z",))


class TestHessian:
    def test_quartic(self):
        H = hessian(P("x1^4 + x2^4 + 10*x1^2*x2^2"))
        assert H[0][0] == 12 * x1**2 + 20 * x2**2
        assert H[0][1] == H[1][0] == 40 * x1 * x2
        assert H[1][1] == 20 * x1**2 + 12 * x2**2

    def test_constant_hessians(self):
        assert hessian(x1**2 + x2**2) == [[2, 0], [0, 2]]
        assert hessian(x1 * x2) == [[0, 1], [1, 0]]

    @given(polys())
    @settings(max_examples=30)
    def test_symmetric(self, f):
        H = hessian(f)
        assert all(H[i][j] == H[j][i] for i in range(2) for j in range(2))

    def test_minors(self):
        H = hessian(P("x1^4 + x2^4 + 10*x1^2*x2^2"))
        minors = principal_minors(H)
        assert [idx for idx, _ in minors] == [(1,), (2,), (1, 2)]
        assert minors[0][1] == 12 * x1**2 + 20 * x2**2
        assert minors[1][1] == 20 * x1**2 + 12 * x2**2
        assert minors[2][1] == P("240*x1^4 - 1056*x1^2*x2^2 + 240*x2^4")

    def test_trivial_minors(self):
        one = MPoly.const(1, X)
        zero = MPoly.const(0, X)
        assert [m for _, m in principal_minors([[one, zero], [zero, one]])] == [1, 1, 1]
        assert [m for _, m in principal_minors([[zero, one], [one, zero]])] == [0, 0, -1]

    def test_three_by_three_count(self):
        f = P("x1^2*x2 + x2^2*x3 + x3^2*x1 + x1*x2*x3")
        minors = principal_minors(hessian(f))
        assert len(minors) == 7
        # Bareiss against cofactor expansion
        H = hessian(f)
        det = (
            H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1])
            - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0])
            + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0])
        )
        assert minors[-1][1] == det

    def test_non_square(self):
        with pytest.raises(NonSquare):
            principal_minors([[x1, x2]])
        with pytest.raises(NonSquare):
            principal_minors([])


class TestLexOrder:
    monos = st.tuples(*[st.integers(0, 4)] * 3)

    @given(monos, monos, monos)
    def test_total_and_compatible(self, a, b, c):
        order = VarOrder(("x2", "x3", "x1"))
        reg = ("x1", "x2", "x3")
        cmp = lambda u, v: order.compare(reg, u, v)  # noqa: E731
        assert cmp(a, b) == -cmp(b, a)
        assert (cmp(a, b) == 0) == (a == b)
        if cmp(a, b) > 0 and cmp(b, c) > 0:
            assert cmp(a, c) > 0
        if cmp(a, b) > 0:
            shift = lambda m: tuple(x + y for x, y in zip(m, c))  # noqa: E731
            assert cmp(shift(a), shift(b)) > 0

    def test_leading_term(self):
        f = P("x1*x2^3 + x1^2 + x2^5")
        assert f.leading_term(VarOrder(("x1", "x2")))[0] == (2, 0)
        assert f.leading_term(VarOrder(("x2", "x1")))[0] == (0, 5)
        assert f.leading_term(VarOrder(("x1", "x2"), "grevlex"))[0] == (0, 5)

    def test_bad_order(self):
        with pytest.raises(RegistryMismatch):
            VarOrder(("x1",)).check(X)
        with pytest.raises(ValueError):
            VarOrder(("x1", "x1"))
