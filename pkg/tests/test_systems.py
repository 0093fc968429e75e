"""Tests for degsdp.systems: incidence and Lagrange systems, regularity."""

import pytest
from sympy import ImmutableMatrix, Rational

from degsdp.algebra.poly import VarContext
from degsdp.elimination.ideal import Ideal, eliminate, same_ideal
from degsdp.errors import ObjectiveLengthError, StratumError
from degsdp.pencil.model import ObjectiveForm, SymmetricPencil
from degsdp.systems.incidence import (
    build_incidence,
    build_unreduced_incidence,
    regularity_check,
    validate_stratum,
)
from degsdp.systems.lagrange import build_lagrange, dump_system
from degsdp.walkthrough import example_pencil, identity_regularity, singular_points


@pytest.fixture
def pencil3():
    return SymmetricPencil.from_rows([
        [[1, 1, 0], [1, 2, 1], [0, 1, 3]],
        [[0, 1, 2], [1, 1, 0], [2, 0, -1]],
    ])


class TestStrata:
    def test_validate(self):
        assert validate_stratum(3, 1, [2, 1]) == (1, 2)

    @pytest.mark.parametrize("m,r,iota", [
        (2, 2, ()),
        (2, 1, (1, 2)),
        (3, 1, (1, 1)),
        (3, 2, (4,)),
    ])
    def test_invalid(self, m, r, iota):
        with pytest.raises(StratumError):
            validate_stratum(m, r, iota)


class TestIncidence:
    def test_example_equations(self, worked):
        inc = build_incidence(worked[0], None, 1, (1,))
        assert inc.ctx.names == ("x1", "x2", "y_2_1")
        assert inc.c == 2
        assert not inc.perturbed
        f1, f2 = inc.polys
        assert f1 == inc.ctx.poly("1 - x1 + (x2 - 1)*y_2_1")
        assert f2 == inc.ctx.poly("x2 - 1 + (x1 - 1)*y_2_1")
        assert inc.multidegrees() == [(1, 1), (1, 1)]

    def test_perturbed_context(self, worked, worked_B):
        inc = build_incidence(worked[0], worked_B.matrix, 1, (2,))
        assert inc.ctx.names == ("eps", "x1", "x2", "y_1_1")
        assert inc.perturbed
        assert inc.pencil is worked[0]

    def test_size(self, pencil3):
        inc = build_incidence(pencil3, None, 1, (1, 2))
        assert inc.c == 5
        assert inc.y_names == ("y_3_1", "y_3_2")
        assert inc.kernel_size == 2

    def test_dropped_entries_follow_from_symmetry(self, pencil3):
        inc = build_incidence(pencil3, None, 1, (1, 2))
        full = build_unreduced_incidence(pencil3, None, 1, (1, 2))
        fixed = ["y_1_1", "y_1_2", "y_2_1", "y_2_2"]
        assert same_ideal(eliminate(full, fixed), inc.ideal)

    def test_perturbation_shape(self, worked):
        with pytest.raises(StratumError):
            build_incidence(worked[0], ImmutableMatrix.eye(3), 1, (1,))


class TestRegularity:
    def test_example_singular_points(self):
        locus, projected = singular_points(example_pencil())
        ctx = locus.ctx
        expected = Ideal.of([ctx.poly("x1 - 1"), ctx.poly("x2 - 1"), ctx.poly("y_2_1^2 + 1")])
        assert same_ideal(locus, expected)
        pctx = projected.ctx
        assert pctx.names == ("x1", "x2")
        assert same_ideal(projected, Ideal.of([pctx.poly("x1 - 1"), pctx.poly("x2 - 1")]))

    def test_identity_perturbation_singular_only_at_zero(self):
        checks = dict(identity_regularity((0, 0)))
        assert checks[Rational(0)] is False
        assert checks[Rational(1)] is True
        assert checks[Rational(1, 2)] is True
        assert checks[Rational(1, 7)] is True

    def test_needs_eps_when_perturbed(self, worked, worked_B):
        inc = build_incidence(worked[0], worked_B.matrix, 1, (1,))
        with pytest.raises(ValueError):
            regularity_check(inc)
        with pytest.raises(ValueError):
            regularity_check(inc, -1)

    def test_witness_reported(self):
        inc = build_incidence(example_pencil(), None, 1, (1,))
        result = regularity_check(inc)
        assert not result.is_regular
        assert result.to_json()["verdict"] == "singular"
        assert result.witness is not None


class TestLagrange:
    def test_sizes(self, worked, worked_B):
        pencil, objective = worked
        L = build_lagrange(build_incidence(pencil, worked_B.matrix, 1, (1,)), objective)
        assert L.N == 5
        assert len(L.polys) == 5
        assert L.z_names == ("z1", "z2")
        assert L.ctx.names == ("eps", "x1", "x2", "y_2_1", "z1", "z2")

    def test_gradient_equations(self, worked):
        pencil, objective = worked
        L = build_lagrange(build_incidence(pencil, None, 1, (1,)), objective)
        ctx = L.ctx
        g_x1, g_x2, g_y = L.g
        # d f1/dx1 = -1, d f2/dx1 = y
        assert g_x1 == ctx.poly("-z1 + z2*y_2_1 - 88")
        assert g_x2 == ctx.poly("z1*y_2_1 + z2 + 94")
        assert g_y == ctx.poly("z1*(x2 - 1) + z2*(x1 - 1)")

    def test_multidegrees(self, worked):
        L = build_lagrange(build_incidence(worked[0], None, 1, (1,)), worked[1])
        assert L.multidegrees()[:2] == [(1, 1, 0), (1, 1, 0)]
        assert L.multidegrees()[2] == (0, 1, 1)

    def test_objective_length(self, worked):
        inc = build_incidence(worked[0], None, 1, (1,))
        with pytest.raises(ObjectiveLengthError):
            build_lagrange(inc, ObjectiveForm((1,)))

    def test_dump(self, worked):
        L = build_lagrange(build_incidence(worked[0], None, 1, (1,)), worked[1])
        text = dump_system(L)
        header, *lines = text.strip().split("\n")
        assert header.startswith("# r=1 iota=[1] c=2 N=5")
        assert len(lines) == 5
