"""
Tests for the sum constructions: dual, orthogonal, operator-weighted and scalar-weighted.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from constructions import dual_sum, orthogonal_sum, scalar_weighted_sum, weighted_operator_sum
from errors import DualityFailed, HypothesisFailed, NotOrthogonal, NotPositive, ShapeMismatch
from frames import canonical_dual, check_kg_frame, frame_operator
from hilbert import AdjOp, pinv
from tests.conftest import identity_family, scalar_family


class TestDualSum:
    def test_identity_pair(self):
        F = identity_family(1, 1)
        result = dual_sum(F, F, AdjOp.identity(1, 1))
        assert_allclose(frame_operator(result.family).matrix, [[4.0]])
        assert result.certified_bounds.lower == pytest.approx(4.0)
        assert result.certified_bounds.upper == pytest.approx(4.0)
        assert result.certificates["frame_operator_identity"]
        assert result.corrected_bounds.upper == pytest.approx(4.0)
        assert result.claimed_bounds.upper == pytest.approx(2.0)
        assert result.envelope_violations() == []
        assert any("upper" in note for note in result.discrepancy_notes)

    def test_canonical_dual_pair(self, gen):
        for _ in range(5):
            F = gen.family()
            W = gen.operator(2, 2)
            K1 = W @ W.H
            result = dual_sum(F, canonical_dual(F, K1), K1)
            assert result.certificates["frame_operator_identity"]
            assert result.envelope_violations() == []

    def test_not_a_dual(self):
        F = identity_family(1, 1)
        with pytest.raises(DualityFailed):
            dual_sum(F, F.scaled(2.0), AdjOp.identity(1, 1))

    def test_k1_must_be_positive(self):
        F = identity_family(1, 1)
        with pytest.raises(NotPositive):
            dual_sum(F, F.scaled(-1.0), AdjOp.identity(1, 1) * -1.0)

    def test_shapes_must_agree(self):
        with pytest.raises(ShapeMismatch):
            dual_sum(identity_family(1, 1), identity_family(1, 1, weight=2.0), AdjOp.identity(1, 1))


class TestOrthogonalSum:
    def test_disjoint_blocks(self):
        F = scalar_family((1.0,), ([[1, 0], [0, 0]],))
        G = scalar_family((1.0,), ([[0, 0], [0, 1]],))
        K1 = AdjOp(np.diag([1.0, 0.0]), 1)
        K2 = AdjOp(np.diag([0.0, 1.0]), 1)
        result = orthogonal_sum(F, G, K1, K2)
        assert result.hypotheses_hold
        assert result.certificates["cross_terms_vanish"]
        assert result.certified_bounds.lower == pytest.approx(1.0)
        assert result.certified_bounds.upper == pytest.approx(1.0)
        assert result.corrected_bounds.lower == pytest.approx(0.5)
        assert result.envelope_violations() == []

    def test_overlapping_synthesis(self):
        F = identity_family(1, 2)
        with pytest.raises(NotOrthogonal):
            orthogonal_sum(F, F, AdjOp.identity(1, 2), AdjOp.identity(1, 2))

    def test_zero_k2_noted(self):
        F = scalar_family((1.0,), ([[1, 0], [0, 0]],))
        G = scalar_family((1.0,), ([[0, 0], [0, 1]],))
        result = orthogonal_sum(F, G, AdjOp(np.diag([1.0, 0.0]), 1), AdjOp.zeros(1, 2, 2))
        assert "degenerate K: K2 = 0" in result.discrepancy_notes


class TestWeightedSum:
    def test_zero_second_weight_reduces_to_precomposition(self, gen):
        F = gen.family()
        G = gen.perturbed(F, 0.0, 1.0)
        K1, theta1 = gen.well_conditioned(), gen.well_conditioned()
        K2 = theta1 @ K1 @ pinv(theta1)
        result = weighted_operator_sum(F, G, K1, K2, theta1, AdjOp.zeros(2, 2, 2))
        assert result.hypotheses_hold
        expected = F.transformed(theta1.H)
        for got, want in zip(result.family.members, expected.members):
            assert_allclose(got.matrix, want.matrix, atol=1e-12)
        assert result.envelope_violations() == []

    def test_negative_cross_term(self, gen):
        F = gen.family()
        K1 = gen.well_conditioned()
        theta1 = AdjOp.identity(2, 2)
        result = weighted_operator_sum(F, F.scaled(-1.0), K1, K1, theta1, theta1 * 0.5)
        assert not result.hypothesis_checks["cross_term_positive"]
        with pytest.raises(HypothesisFailed) as info:
            weighted_operator_sum(F, F.scaled(-1.0), K1, K1, theta1, theta1 * 0.5, strict=True)
        assert info.value.predicate == "cross_term_positive"


class TestScalarSum:
    def test_equal_families(self, gen):
        F = gen.family()
        I = AdjOp.identity(2, 2)
        result = scalar_weighted_sum(F, F, I, I, I, I, 1.0, 1.0)
        assert result.informational["condition_i"]
        assert not result.informational["condition_ii"]
        base = check_kg_frame(F, I)
        assert result.claimed_bounds.lower == pytest.approx(2 * base.optimal_lower, rel=1e-8)
        assert result.certified_bounds.lower == pytest.approx(4 * base.optimal_lower, rel=1e-8)
        assert result.corrected_bounds.upper == pytest.approx(4 * base.bessel_bound, rel=1e-8)
        assert result.envelope_violations() == []

    def test_negative_scalars_rejected(self, gen):
        F = gen.family()
        I = AdjOp.identity(2, 2)
        with pytest.raises(ValueError):
            scalar_weighted_sum(F, F, I, I, I, I, -1.0, 1.0)
        with pytest.raises(ValueError):
            scalar_weighted_sum(F, F, I, I, I, I, 0.0, 0.0)
