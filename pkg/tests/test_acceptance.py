"""
Full-size acceptance campaigns at the default dimension ranges.

These run every construction kind and every operator-level check at the
production trial counts, so they are marked slow: ``pytest -m slow``.
"""

import numpy as np
import pytest

from algebra import loewner_leq
from frames import check_kg_frame, frame_operator
from graph import run_theorem_suite
from harness.generator import RandomOperatorGenerator, TrialConfig, sample_dims, trial_rng
from harness.scenario import KINDS
from hilbert import (
    AdjOp,
    ModuleVec,
    apply,
    douglas_solve,
    inner,
    is_surjective,
    majorizes,
    min_gain,
    pinv,
    range_inclusion,
    rank,
)

pytestmark = pytest.mark.slow

CAMPAIGN_TRIALS = 200
CROSS_CHECK_TRIALS = 300
OPERATOR_TRIALS = 500
MAX_SKIPPED = 0.05


def generators(seed: int, trials: int):
    trial_config = TrialConfig(master_seed=seed, trials=trials)
    for index in range(trials):
        yield index, RandomOperatorGenerator(trial_rng(seed, index), sample_dims(seed, index, trial_config))


def deficient(gen: RandomOperatorGenerator, src: int, dst: int) -> AdjOp:
    r = max(0, min(src, dst) * gen.d - 1)
    return AdjOp(gen.ginibre(src * gen.d, r) @ gen.ginibre(r, dst * gen.d), gen.d)


@pytest.mark.parametrize("kind", KINDS)
def test_kind_campaign(kind):
    report = run_theorem_suite(kind, TrialConfig(master_seed=2024, trials=CAMPAIGN_TRIALS))
    assert report.passed + report.failed + report.skipped == CAMPAIGN_TRIALS
    assert report.failed == 0, [r.failures for r in report.records if r.status == "fail"][:5]
    assert report.skipped <= MAX_SKIPPED * CAMPAIGN_TRIALS


def test_operator_norm_bounds_inner_product():
    for _, gen in generators(11, OPERATOR_TRIALS):
        T = gen.operator(gen.n, gen.fiber)
        x = ModuleVec(gen.ginibre(gen.d, gen.n * gen.d), gen.d)
        y = apply(T, x)
        assert loewner_leq(inner(y, y), inner(x, x) * T.norm() ** 2, tol=1e-9)


def test_moore_penrose_identities():
    for index, gen in generators(12, OPERATOR_TRIALS):
        src, dst = gen.n, gen.fiber
        T = gen.operator(src, dst) if index % 2 == 0 else deficient(gen, src, dst)
        P = pinv(T)
        scale = max(1.0, T.norm() * P.norm())
        assert (T @ P @ T - T).norm() <= 1e-9 * scale * max(1.0, T.norm())
        assert (P @ T @ P - P).norm() <= 1e-9 * scale * max(1.0, P.norm())
        assert ((T @ P).H - T @ P).norm() <= 1e-9 * scale
        assert ((P @ T).H - P @ T).norm() <= 1e-9 * scale
        proj = T @ P
        assert (proj @ proj - proj).norm() <= 1e-9 * scale
        assert (proj @ T - T).norm() <= 1e-9 * scale * max(1.0, T.norm())


def test_douglas_predicates_agree():
    for index, gen in generators(13, OPERATOR_TRIALS):
        T = gen.low_rank(gen.n * gen.d - 1)
        Tp = T @ gen.operator(gen.fiber, gen.n) if index % 2 == 0 else gen.operator(gen.fiber, gen.n)
        included = range_inclusion(Tp, T)
        assert included == (index % 2 == 0)
        assert (majorizes(T, Tp) is not None) == included
        if included:
            Q = douglas_solve(T, Tp)
            assert (T @ Q - Tp).norm() <= 1e-9 * Tp.norm()


def test_surjectivity_matches_adjoint_gain():
    for index, gen in generators(14, OPERATOR_TRIALS):
        src, dst = gen.n, gen.fiber
        T = gen.operator(src, dst) if index % 2 == 0 else deficient(gen, src, dst)
        surjective = is_surjective(T)
        assert surjective == (rank(T) == dst * gen.d)
        assert surjective == (min_gain(T.H) > 1e-9 * T.norm())


def test_bisection_matches_closed_form():
    checked = 0
    for _, gen in generators(15, CROSS_CHECK_TRIALS):
        F = gen.family()
        K = frame_operator(F) @ gen.operator(gen.n, gen.n)
        report = check_kg_frame(F, K, cross_check=True)
        if report.degenerate_k:
            continue
        assert report.range_included
        assert report.bisection_agrees, (report.bisection_lower, report.optimal_lower)
        checked += 1
    assert checked >= 0.95 * CROSS_CHECK_TRIALS
