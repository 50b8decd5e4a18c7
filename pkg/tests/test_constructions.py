"""
Tests for the operator-transform constructions and their equivalence checks.
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from constructions import (
    compare,
    k_sum_frame,
    precompose_adjoint,
    range_equality_characterization,
    recover_frame_check,
    tight_surjectivity_equivalence,
    transfer_frame,
)
from constructions.hypotheses import commutes, same_kernel, trivial_intersection
from errors import DimensionMismatch, HypothesisFailed, NotTight
from frames import check_kg_frame
from hilbert import AdjOp
from tests.conftest import identity_family, scalar_family


def diag_op(*entries) -> AdjOp:
    return AdjOp(np.diag(np.asarray(entries, dtype=complex)), 1)


class TestCompare:
    def test_lower_and_upper(self):
        assert compare("q", "lower", 1.0, 2.0).holds
        assert not compare("q", "lower", 2.0, 1.0).holds
        assert compare("q", "upper", 2.0, 1.0).holds
        assert not compare("q", "upper", 1.0, 2.0).holds

    def test_ratio_below_one_when_too_optimistic(self):
        assert compare("q", "lower", 2.0, 1.0).ratio == pytest.approx(0.5)
        assert compare("q", "upper", 1.0, 4.0).ratio == pytest.approx(0.25)

    def test_infinite_lower(self):
        assert compare("q", "lower", math.inf, math.inf).holds
        assert not compare("q", "lower", math.inf, 3.0).holds


class TestHypotheses:
    def test_commutes(self, gen):
        K = gen.operator(2, 2)
        assert commutes(K, gen.polynomial(K))
        assert not commutes(K, gen.operator(2, 2))

    def test_trivial_intersection(self):
        assert trivial_intersection(diag_op(1, 1), diag_op(1, 0))
        assert not trivial_intersection(diag_op(0, 1), diag_op(1, 0))

    def test_same_kernel(self):
        assert same_kernel(diag_op(1, 0), diag_op(3, 0))
        assert not same_kernel(diag_op(1, 0), diag_op(0, 1))


class TestPrecompose:
    def test_scaled_identity(self, gen):
        F, K = gen.family(), gen.well_conditioned()
        base = check_kg_frame(F, K)
        result = precompose_adjoint(F, K, AdjOp.identity(2, 2) * 2.0)
        assert result.hypotheses_hold
        assert result.certified_bounds.lower == pytest.approx(4 * base.optimal_lower, rel=1e-8)
        assert result.certified_bounds.upper == pytest.approx(4 * base.bessel_bound, rel=1e-8)
        assert result.claimed_bounds.lower == pytest.approx(4 * base.optimal_lower, rel=1e-8)
        assert result.envelope_violations() == []

    def test_identity_keeps_bounds(self, gen):
        F, K = gen.family(), gen.well_conditioned()
        base = check_kg_frame(F, K)
        result = precompose_adjoint(F, K, AdjOp.identity(2, 2))
        assert result.certified_bounds.lower == pytest.approx(base.optimal_lower, rel=1e-8)
        assert result.certified_bounds.upper == pytest.approx(base.bessel_bound, rel=1e-8)
        assert not result.discrepancy_notes

    def test_polynomial_theta(self, gen):
        for _ in range(5):
            F, K = gen.family(), gen.operator(2, 2)
            result = precompose_adjoint(F, K, gen.polynomial(K))
            assert result.hypotheses_hold
            assert result.envelope_violations() == []

    def test_zero_theta_recorded(self, gen):
        F, K = gen.family(), gen.well_conditioned()
        result = precompose_adjoint(F, K, AdjOp.zeros(2, 2, 2))
        assert not result.hypothesis_checks["trivial_intersection"]
        assert result.envelope_violations() == []
        assert result.discrepancy_notes[0].startswith("hypotheses not met")

    def test_zero_theta_strict(self, gen):
        with pytest.raises(HypothesisFailed) as info:
            precompose_adjoint(gen.family(), gen.well_conditioned(), AdjOp.zeros(2, 2, 2), strict=True)
        assert info.value.predicate == "trivial_intersection"

    def test_shape_checked(self, gen):
        with pytest.raises(DimensionMismatch):
            precompose_adjoint(gen.family(), gen.well_conditioned(), AdjOp.identity(2, 3))


class TestRecover:
    def test_identity_theta(self, gen):
        verdict = recover_frame_check(gen.family(), gen.well_conditioned(), AdjOp.identity(2, 2))
        assert verdict.hypotheses_hold
        assert all(verdict.conclusions.values())
        assert verdict.consistent

    def test_zero_theta_is_vacuous(self, gen):
        verdict = recover_frame_check(gen.family(), gen.well_conditioned(), AdjOp.zeros(2, 2, 2))
        assert not verdict.hypothesis_checks["theta_frame"]
        assert verdict.consistent
        assert verdict.notes


class TestTightSurjectivity:
    def test_non_surjective_theta(self):
        F = identity_family(1, 2)
        verdict = tight_surjectivity_equivalence(F, AdjOp.identity(1, 2), diag_op(1, 0))
        assert verdict.conclusions == {"theta_surjective": False, "precomposed_frame": False}
        assert verdict.consistent
        assert verdict.values["delta"] == pytest.approx(1.0)

    def test_surjective_polynomial(self, gen):
        K = gen.well_conditioned()
        F = gen.tight(K, 0.7)
        verdict = tight_surjectivity_equivalence(F, K, gen.polynomial(K))
        assert verdict.conclusions == {"theta_surjective": True, "precomposed_frame": True}
        assert verdict.values["delta"] == pytest.approx(0.7, rel=1e-8)

    def test_requires_tight_family(self):
        F = scalar_family((1.0,), ([[1, 0], [0, 2]],))
        with pytest.raises(NotTight):
            tight_surjectivity_equivalence(F, AdjOp.identity(1, 2), AdjOp.identity(1, 2))

    def test_requires_adjoint_bounded_below(self):
        F = scalar_family((1.0,), ([[1], [0]],))
        with pytest.raises(HypothesisFailed) as info:
            tight_surjectivity_equivalence(F, diag_op(1, 0), AdjOp.identity(1, 2))
        assert info.value.predicate == "k_adjoint_bounded_below"


class TestTransfer:
    def test_theta_equal_to_t(self, gen):
        F, K, T = gen.family(), gen.operator(2, 2), gen.well_conditioned()
        result = transfer_frame(F, K, T, T)
        assert result.hypotheses_hold
        assert result.certificates["factorization"]
        assert result.values["restricted_gain"] == pytest.approx(1.0, rel=1e-8)
        assert result.certified_bounds.lower == pytest.approx(result.claimed_bounds.lower, rel=1e-7)
        assert result.envelope_violations() == []

    def test_kernel_mismatch_recorded(self):
        F = identity_family(1, 2)
        result = transfer_frame(F, AdjOp.identity(1, 2), diag_op(1, 0), diag_op(0, 1))
        assert not result.hypothesis_checks["kernel_equality"]
        assert "factorization" not in result.certificates

    def test_kernel_mismatch_strict(self):
        F = identity_family(1, 2)
        with pytest.raises(HypothesisFailed):
            transfer_frame(F, AdjOp.identity(1, 2), diag_op(1, 0), diag_op(0, 1), strict=True)


class TestRangeEquality:
    def test_parseval_identity(self, gen):
        verdict = range_equality_characterization(gen.parseval(), AdjOp.identity(2, 2))
        assert all(verdict.conclusions.values())
        assert verdict.consistent
        assert verdict.family is not None
        assert verdict.values["factor_bessel"] == pytest.approx(1.0, rel=1e-8)

    def test_zero_operator(self, gen):
        verdict = range_equality_characterization(gen.family(), AdjOp.zeros(2, 2, 2))
        assert not any(verdict.conclusions.values())
        assert verdict.consistent
        assert verdict.family is None

    def test_factor_family_reproduces_members(self, gen):
        K = gen.operator(2, 2)
        F = gen.family().transformed(K.H)
        verdict = range_equality_characterization(F, K)
        assert verdict.conclusions["factorization"]
        for phi, ups in zip(verdict.family.members, F.members):
            assert_allclose((phi @ K.H).matrix, ups.matrix, atol=1e-8)


class TestKSum:
    def test_zero_second_operator(self, gen):
        K1 = gen.well_conditioned()
        F = gen.tight(K1, 1.0)
        result = k_sum_frame(F, K1, AdjOp.zeros(2, 2, 2))
        assert result.hypotheses_hold
        assert result.certificates["tight_range_equivalence"]
        assert result.certificates["tight_lower_bound"]
        assert result.values["gamma"] == 0.0
        assert result.envelope_violations() == []
        assert any("upper" in note for note in result.discrepancy_notes)

    def test_corrected_constants(self, gen):
        for _ in range(5):
            K1 = gen.well_conditioned()
            F = gen.tight(K1, gen.rng.uniform(0.5, 2.0))
            K2 = K1 @ gen.operator(2, 2)
            result = k_sum_frame(F, K1, K2)
            assert result.envelope_violations() == []
            assert result.certificates["tight_range_equivalence"]

    def test_tight_branch_requires_tightness(self, gen):
        with pytest.raises(NotTight):
            k_sum_frame(gen.family(), gen.well_conditioned(), gen.identity(), tight_branch=True)

    def test_tight_branch_skipped(self, gen):
        K1 = gen.well_conditioned()
        result = k_sum_frame(gen.tight(K1, 1.0), K1, gen.identity(), tight_branch=False)
        assert "tight_range_equivalence" not in result.certificates
