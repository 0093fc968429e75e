"""Tests for degsdp.elimination: ideals, parametrizations and real roots."""

import pytest
from sympy import Rational, sqrt

from degsdp.algebra.poly import VarContext
from degsdp.elimination.ideal import (
    EMPTY,
    Ideal,
    contains,
    dimension,
    eliminate,
    groebner,
    horizontal_part,
    instantiate,
    intersect,
    is_unit,
    product,
    same_ideal,
    saturate,
)
from degsdp.elimination.params import ZeroDimParam, one_dim_param, zero_dim_param
from degsdp.elimination.realroots import V_CTX, AlgebraicNumber, algebraic_value, isolate_real_roots, real_points, sign_at
from degsdp.errors import ContextMismatchError, NotCurveError, NotZeroDimensionalError


@pytest.fixture
def ctx():
    return VarContext(("x1", "x2"))


def ideal(ctx, *texts):
    return Ideal.of([ctx.poly(t) for t in texts], ctx)


class TestGroebner:
    def test_unit(self, ctx):
        assert is_unit(ideal(ctx, "x1", "x1 - 1"))
        assert not is_unit(ideal(ctx, "x1"))

    def test_reduced_and_deterministic(self, ctx):
        I = ideal(ctx, "x1^2 - x2", "x1*x2 - 1")
        assert groebner(I).polys == groebner(I).polys
        assert contains(I, ctx.poly("x2^3 - 1") * ctx.poly("x1"))

    def test_same_ideal(self, ctx):
        assert same_ideal(ideal(ctx, "x1 + x2", "x1 - x2"), ideal(ctx, "x1", "x2"))

    def test_dimension(self, ctx):
        assert dimension(ideal(ctx, "x1 - 1", "x2^2 - 1")) == 0
        assert dimension(ideal(ctx, "x1*x2")) == 1
        assert dimension(ideal(ctx, "1")) == EMPTY
        assert dimension(Ideal(ctx, ())) == 2

    def test_context_mismatch(self, ctx):
        with pytest.raises(ContextMismatchError):
            Ideal(ctx, (VarContext(("v",)).gen("v"),))


class TestElimination:
    def test_cusp(self):
        c = VarContext(("s", "x1", "x2"))
        I = Ideal.of([c.poly("x1 - s^2"), c.poly("x2 - s^3")])
        E = eliminate(I, ["s"])
        assert E.ctx.names == ("x1", "x2")
        assert contains(E, E.ctx.poly("x1^3 - x2^2"))
        assert len(groebner(E).polys) == 1

    def test_cannot_eliminate_everything(self, ctx):
        with pytest.raises(ValueError):
            eliminate(ideal(ctx, "x1"), ["x1", "x2"])

    def test_saturate(self, ctx):
        I = ideal(ctx, "x1*x2", "x1^2")
        assert same_ideal(saturate(I, ctx.poly("x1")), Ideal.unit(ctx))
        J = ideal(ctx, "x1*x2")
        assert same_ideal(saturate(J, ctx.poly("x1")), ideal(ctx, "x2"))

    def test_intersect_and_product(self, ctx):
        a, b = ideal(ctx, "x1"), ideal(ctx, "x2")
        assert same_ideal(intersect(a, b), ideal(ctx, "x1*x2"))
        assert same_ideal(product(a, b), ideal(ctx, "x1*x2"))

    def test_instantiate(self):
        c = VarContext(("eps", "x1"))
        I = Ideal.of([c.poly("x1 - eps")])
        J = instantiate(I, {"eps": Rational(1, 2)})
        assert J.ctx.names == ("x1",)
        assert contains(J, J.ctx.poly("2*x1 - 1"))

    def test_horizontal_part_drops_vertical_components(self):
        c = VarContext(("eps", "x1", "x2"))
        I = Ideal.of([c.poly("(eps - 1)*(x1 - eps)"), c.poly("(eps - 1)*x2"), c.poly("eps*(x2 - 1)*(x1 - eps)")])
        H = horizontal_part(I, "eps")
        assert H.ctx == c
        assert same_ideal(H, Ideal.of([c.poly("x1 - eps"), c.poly("x2")]))

    def test_horizontal_part_over_finitely_many_parameters(self):
        c = VarContext(("x1", "eps"))
        assert is_unit(horizontal_part(Ideal.of([c.poly("eps^2 - 2"), c.poly("x1")]), "eps"))
        assert same_ideal(horizontal_part(Ideal.of([c.poly("x1*eps - 1")]), "eps"), Ideal.of([c.poly("x1*eps - 1")]))

    def test_horizontal_part_needs_the_parameter(self, ctx):
        with pytest.raises(ContextMismatchError):
            horizontal_part(ideal(ctx, "x1"), "eps")


class TestZeroDimParam:
    def test_rational_point(self, ctx):
        Q = zero_dim_param(ideal(ctx, "x1 - 1", "x2 + 2"))
        assert Q.degree == 1
        assert Q.contains([1, -2])
        assert not Q.contains([1, 2])
        (point,) = real_points(Q)
        assert point.rational_coordinates() == (1, -2)

    def test_irrational_points(self, ctx):
        Q = zero_dim_param(ideal(ctx, "x1^2 - 2", "x2 - x1"))
        assert Q.degree == 2
        points = real_points(Q)
        assert len(points) == 2
        approx = sorted(p.approx()[0] for p in points)
        assert approx == pytest.approx([-float(sqrt(2)), float(sqrt(2))])
        assert all(p.sign_of(ctx.poly("x1 - x2")) == 0 for p in points)

    def test_complex_points_are_not_real(self, ctx):
        Q = zero_dim_param(ideal(ctx, "x1^2 + 1", "x2"))
        assert Q.degree == 2
        assert real_points(Q) == []

    def test_radical_taken(self, ctx):
        Q = zero_dim_param(ideal(ctx, "(x1 - 1)^2", "x2"))
        assert Q.degree == 1

    def test_residual_and_ideal(self, ctx):
        I = ideal(ctx, "x1^2 - 1", "x2 - x1")
        Q = zero_dim_param(I)
        assert Q.residual_ok(I.generators)
        assert same_ideal(Q.to_ideal(), I)

    def test_empty(self, ctx):
        Q = zero_dim_param(ideal(ctx, "x1", "x1 - 1"))
        assert Q.is_empty
        assert real_points(Q) == []
        assert is_unit(Q.to_ideal())

    def test_not_zero_dimensional(self, ctx):
        with pytest.raises(NotZeroDimensionalError):
            zero_dim_param(ideal(ctx, "x1*x2"))

    def test_from_point(self, ctx):
        Q = ZeroDimParam.from_point(ctx, [Rational(1, 3), 5])
        assert Q.contains({"x1": Rational(1, 3), "x2": 5})
        assert real_points(Q)[0].rational_coordinates() == (Rational(1, 3), 5)
        with pytest.raises(ValueError):
            ZeroDimParam.from_point(ctx, [1])


class TestOneDimParam:
    def test_twisted_curve(self):
        c = VarContext(("eps", "x1", "x2"))
        I = Ideal.of([c.poly("x1 - eps"), c.poly("x2 - eps^2")])
        curve = one_dim_param(I, keep=("x1", "x2"), parameter="eps")
        assert not curve.is_empty
        assert curve.kept == ("x1", "x2")
        assert curve.shaped
        assert curve.residual_ok()

    def test_empty_curve(self):
        c = VarContext(("eps", "x1"))
        curve = one_dim_param(Ideal.unit(c), keep=("x1",))
        assert curve.is_empty

    def test_points_are_not_a_curve(self):
        c = VarContext(("eps", "x1"))
        with pytest.raises(NotCurveError):
            one_dim_param(Ideal.of([c.poly("eps"), c.poly("x1 - 1")]), keep=("x1",))


class TestRealRoots:
    def test_isolation(self):
        roots = isolate_real_roots(V_CTX.poly("v^3 - 2*v"))
        assert [round(r.approx(), 8) for r in roots] == [-1.41421356, 0.0, 1.41421356]
        for a, b in zip(roots, roots[1:]):
            assert a.hi <= b.lo

    def test_not_squarefree(self):
        with pytest.raises(ValueError):
            isolate_real_roots(V_CTX.poly("(v - 1)^2"))

    def test_compare(self):
        neg, pos = isolate_real_roots(V_CTX.poly("v^2 - 2"))
        assert neg.compare(pos) == -1
        assert pos.compare(neg) == 1
        assert pos.compare(pos) == 0
        assert pos.compare(AlgebraicNumber.rational(Rational(3, 2))) == -1

    def test_sign(self):
        _, root2 = isolate_real_roots(V_CTX.poly("v^2 - 2"))
        assert root2.sign_of(V_CTX.poly("v - 1")) == 1
        assert root2.sign_of(V_CTX.poly("v^2 - 2")) == 0
        assert root2.sign_of(V_CTX.poly("2 - v^2 - v")) == -1

    def test_sign_at_exact_and_constant(self):
        third = AlgebraicNumber.rational(Rational(1, 3))
        assert sign_at(V_CTX.poly("3*v - 1"), third) == 0
        assert sign_at(V_CTX.poly("v - 1"), third) == -1
        assert sign_at(V_CTX.poly("5"), third) == 1

    def test_algebraic_value(self):
        _, root2 = isolate_real_roots(V_CTX.poly("v^2 - 2"))
        value = algebraic_value(V_CTX.poly("v + 1"), V_CTX.poly("v"), root2)
        # (sqrt2 + 1) / sqrt2 = 1 + sqrt2/2
        assert value.approx() == pytest.approx(1 + float(sqrt(2)) / 2)

    def test_rational(self):
        one = AlgebraicNumber.rational(1)
        assert one.is_exact
        assert one.approx() == 1.0
