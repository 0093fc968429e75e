"""Tests for degsdp.pencil: instances, exact PSD verdicts and the zero-point cone test."""

import json
from unittest.mock import MagicMock

import pytest
from sympy import ImmutableMatrix, Rational

from degsdp.algebra.poly import VarContext
from degsdp.elimination.ideal import Ideal
from degsdp.elimination.params import zero_dim_param
from degsdp.elimination.realroots import real_points
from degsdp.errors import InstanceError, ZeroPointError
from degsdp.pencil.degenerate import ConeVerdict, cone_unboundedness_test, detect_zero_point, feasibility
from degsdp.pencil.model import (
    ObjectiveForm,
    SymmetricPencil,
    parse_instance,
    parse_matrix_document,
    sample_perturbation,
    serialize_instance,
)
from degsdp.pencil.psd import PSDVerdict, certificate_from_signs, matrix_certificate, psd_check


class TestParseInstance:
    def test_example_document(self, worked):
        pencil, objective = worked
        assert (pencil.m, pencil.n) == (2, 2)
        assert objective.coefficients == (88, -94)
        assert pencil.variables == ("x1", "x2")

    def test_rationals_as_strings(self):
        pencil, objective = parse_instance({
            "m": 1, "n": 1, "matrices": [[["1/2"]], [["-3"]]], "objective": ["2/3"],
        })
        assert pencil.constant[0, 0] == Rational(1, 2)
        assert objective.coefficients == (Rational(2, 3),)

    def test_non_symmetric(self, fixture_path):
        with open(fixture_path("malformed.json")) as f:
            doc = json.load(f)
        with pytest.raises(InstanceError) as exc:
            parse_instance(doc)
        assert exc.value.field == "matrices[0]"

    def test_missing_field(self):
        with pytest.raises(InstanceError) as exc:
            parse_instance({"m": 1, "n": 0, "matrices": [[["1"]]]})
        assert exc.value.field == "objective"

    def test_wrong_counts(self):
        with pytest.raises(InstanceError):
            parse_instance({"m": 1, "n": 1, "matrices": [[["1"]]], "objective": ["1"]})
        with pytest.raises(InstanceError):
            parse_instance({"m": 1, "n": 1, "matrices": [[["1"]], [["0"]]], "objective": []})

    def test_bad_rational(self):
        with pytest.raises(InstanceError) as exc:
            parse_instance({"m": 1, "n": 0, "matrices": [[["one"]]], "objective": []})
        assert exc.value.field == "matrices[0][0][0]"

    def test_invalid_json(self):
        with pytest.raises(InstanceError):
            parse_instance("{not json")

    def test_serialize_roundtrip(self, worked):
        pencil, objective = worked
        assert parse_instance(serialize_instance(pencil, objective)) == (pencil, objective)


class TestPencil:
    def test_evaluate(self, worked):
        pencil, _ = worked
        assert pencil.at([1, 1]) == ImmutableMatrix.zeros(2, 2)
        assert pencil.at([0, 0]) == ImmutableMatrix([[1, -1], [-1, -1]])

    def test_point_length(self, worked):
        with pytest.raises(InstanceError):
            worked[0].at([1])

    def test_poly_matrix_with_eps(self, worked, worked_B):
        pencil, _ = worked
        ctx = VarContext(("eps", "x1", "x2"))
        M = pencil.poly_matrix(ctx, worked_B.matrix)
        assert M[0, 0] == ctx.poly("1 - x1 + 80*eps")
        assert M[0, 1] == ctx.poly("-1 + x2 - 68*eps")

    def test_slice(self, worked):
        pencil, objective = worked
        sliced = pencil.homogeneous().slice(objective)
        assert sliced.n == 1
        A1, A2 = pencil.matrices[1], pencil.matrices[2]
        assert sliced.constant == -A1 / 88
        assert sliced.matrices[1] == A2 + Rational(94, 88) * A1

    def test_slice_zero_objective(self, worked):
        with pytest.raises(ValueError):
            worked[0].slice(ObjectiveForm((0, 0)))

    def test_objective_perturbation(self):
        ell = ObjectiveForm((88, -94)).perturbed(Rational(1, 1000))
        assert ell.coefficients == (88 + Rational(1, 1000), -94 + Rational(2, 1000))


class TestPerturbation:
    def test_sampled_is_positive_definite(self):
        for seed in range(5):
            B = sample_perturbation(3, seed)
            assert B.seed == seed
            assert B.matrix == B.matrix.T
            assert matrix_certificate(B.matrix).is_pd

    def test_seed_is_deterministic(self):
        assert sample_perturbation(2, 7) == sample_perturbation(2, 7)

    def test_explicit_document(self, fixture_path, worked_B):
        with open(fixture_path("worked_B.json")) as f:
            B = parse_matrix_document(f.read(), 2)
        assert B.matrix == worked_B.matrix
        assert B.seed is None

    def test_explicit_must_be_definite(self):
        with pytest.raises(InstanceError):
            parse_matrix_document({"B": [["1", "2"], ["2", "1"]]}, 2)

    def test_feasible_points_stay_definite_after_shift(self, worked):
        pencil, _ = worked
        for seed in range(3):
            B = sample_perturbation(2, seed)
            for eps in (Rational(1, 2), Rational(1, 1000)):
                shifted = pencil.perturbed(B.matrix, eps)
                assert psd_check(pencil, (1, 1)).is_psd
                assert psd_check(shifted, (1, 1)).is_pd


class TestPSD:
    def test_zero_matrix_at_vertex(self, worked):
        cert = psd_check(worked[0], [1, 1])
        assert cert.verdict is PSDVerdict.PSD
        assert cert.rank == 0
        assert cert.label == "PSD_rank_0"

    def test_not_psd(self, worked):
        cert = psd_check(worked[0], [0, 0])
        assert cert.verdict is PSDVerdict.NOT_PSD
        assert not cert.is_psd

    def test_sympy_rational_point(self, worked):
        pencil, _ = worked
        cert = psd_check(pencil, (Rational(1), Rational(1)))
        assert cert.label == "PSD_rank_0"
        assert psd_check(pencil, (Rational(1, 2), Rational(3, 2))).verdict is PSDVerdict.NOT_PSD

    def test_interval(self, interval):
        pencil, _ = interval
        assert psd_check(pencil, [Rational(1, 2)]).is_pd
        edge = psd_check(pencil, [0])
        assert edge.label == "PSD_rank_1"
        assert not psd_check(pencil, [2]).is_psd

    def test_algebraic_points(self, interval):
        pencil, _ = interval
        ctx = VarContext(("x1",))
        Q = zero_dim_param(Ideal.of([ctx.poly("2*x1^2 - 1")]))
        verdicts = sorted((p.approx()[0], psd_check(pencil, p).verdict) for p in real_points(Q))
        assert verdicts[0][1] is PSDVerdict.NOT_PSD
        assert verdicts[1][1] is PSDVerdict.PD

    def test_sign_rule(self):
        # t^2 - 3t + 2: roots 1 and 2
        assert certificate_from_signs(None, [1, -1]).verdict is PSDVerdict.PD
        # t^2 - t: roots 0 and 1
        assert certificate_from_signs(None, [0, -1]).label == "PSD_rank_1"
        # t^2 + t: roots 0 and -1
        assert certificate_from_signs(None, [0, 1]).verdict is PSDVerdict.NOT_PSD


class TestZeroPoint:
    def test_detect(self, worked, interval):
        assert detect_zero_point(worked[0]) == (1, 1)
        assert detect_zero_point(interval[0]) is None

    def test_vertex_when_cone_misses_slice(self, worked):
        pencil, objective = worked
        feasible = MagicMock(return_value=False)
        result = cone_unboundedness_test(pencil, (1, 1), objective, feasible)
        assert result.verdict is ConeVerdict.MINIMIZER_AT_VERTEX
        (sliced,), _ = feasible.call_args
        assert sliced.n == 1

    def test_half_line(self, line_pencil):
        pencil, _ = line_pencil
        up = cone_unboundedness_test(pencil, (0,), ObjectiveForm((1,)))
        down = cone_unboundedness_test(pencil, (0,), ObjectiveForm((-1,)))
        assert up.verdict is ConeVerdict.MINIMIZER_AT_VERTEX
        assert down.verdict is ConeVerdict.UNBOUNDED_BELOW

    def test_zero_objective(self, worked):
        result = cone_unboundedness_test(worked[0], (1, 1), ObjectiveForm((0, 0)))
        assert result.verdict is ConeVerdict.MINIMIZER_AT_VERTEX
        assert result.sliced is None

    def test_not_a_zero_point(self, worked):
        with pytest.raises(ZeroPointError):
            cone_unboundedness_test(worked[0], (0, 0), worked[1])

    def test_feasibility_without_variables(self):
        assert feasibility(SymmetricPencil.identity(2))
        assert not feasibility(SymmetricPencil.from_rows([[[-1]]]))

    def test_constant_pencils(self):
        one = SymmetricPencil.from_rows([[[1]], [[0]], [[0]]])
        minus = SymmetricPencil.from_rows([[[-1, 0], [0, 1]], [[0, 0], [0, 0]]])
        assert feasibility(one)
        assert not feasibility(minus)

    def test_scalar_pencil_is_a_half_space(self):
        assert feasibility(SymmetricPencil.from_rows([[[-5]], [[0]], [[2]]]))

    def test_scalar_pencil_unbounded_in_every_direction(self):
        # -x1 - x2 >= 0 with objective x1 + x2 is unbounded along d = (-1, 0)
        pencil = SymmetricPencil.from_rows([[[0]], [[-1]], [[-1]]])
        result = cone_unboundedness_test(pencil, (0, 0), ObjectiveForm((1, 1)))
        assert result.sliced.n == 1
        assert result.verdict is ConeVerdict.UNBOUNDED_BELOW

    @pytest.mark.slow
    def test_unbounded_through_matrix_slice(self):
        # x1*I + x2*I + x3*diag(1, -1) with objective x3: d = (1, 0, -1) is a recession direction
        pencil = SymmetricPencil.from_rows([
            [[0, 0], [0, 0]],
            [[1, 0], [0, 1]],
            [[1, 0], [0, 1]],
            [[1, 0], [0, -1]],
        ])
        result = cone_unboundedness_test(pencil, (0, 0, 0), ObjectiveForm((0, 0, 1)))
        assert result.verdict is ConeVerdict.UNBOUNDED_BELOW

    @pytest.mark.slow
    def test_feasibility_of_a_strip_missing_the_center(self):
        # diag(d1 + d2 - 1, d1 + d2 + 1) >= 0 iff d1 + d2 >= 1
        strip = SymmetricPencil.from_rows([
            [[-1, 0], [0, 1]],
            [[1, 0], [0, 1]],
            [[1, 0], [0, 1]],
        ])
        empty = SymmetricPencil.from_rows([
            [[-1, 0], [0, -1]],
            [[1, 0], [0, -1]],
            [[0, 1], [1, 0]],
        ])
        assert feasibility(strip)
        assert not feasibility(empty)
