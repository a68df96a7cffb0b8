from helpers import *

from dataclasses import replace
import pytest


def test_hypothesis_systems():
    lhs, rhs = hypothesis_systems(sextic_intro(), 3, 2, 1)
    assert lhs.r == 1
    assert lhs.schemes[3].staircase == Staircase.big_point(2, 3).slice(1)
    assert lhs.schemes[3].divisor_shift == 1
    assert rhs.r == 2
    assert rhs.schemes[3].staircase.is_empty()
    # everything else is left alone
    assert lhs.schemes[:3] == sextic_intro().schemes[:3]


def test_sextic_hypotheses():
    first = check_hypothesis(sextic_intro(), 3, 1, 3)
    second = check_hypothesis(sextic_intro(), 3, 2, 1)
    assert (first.dim_lhs, first.dim_rhs) == (17, 17)
    assert (second.dim_lhs, second.dim_rhs) == (14, 14)
    assert first.holds and second.holds
    assert first.seed == sextic_intro().seed


def test_sextic_step():
    step = horace_step(sextic_intro(), 3, [3, 1])
    assert step.slices == (3, 1)
    assert [h.i for h in step.hypotheses] == [1, 2]
    assert step.residual_spec.r == 2
    moved = step.residual_spec.schemes[3]
    assert moved.staircase == Staircase.from_points([(0, 0), (0, 1)])
    assert moved.kind == PositionKind.GENERIC_ON_DIVISOR
    assert moved.divisor_shift == 2
    assert step.conditions_removed == 4
    assert step.virtual_dimension_before == 12
    assert step.virtual_dimension_after == 3


def test_sextic_certificate():
    certificate = certify(sextic_intro(), [(3, [3, 1])])
    assert certificate.status == CertificateStatus.PROVEN
    assert certificate.claimed_dimension == 12
    assert certificate.virtual_dimension == 12
    assert certificate.seeds == (0,)


def test_auto_strategy_on_sextic():
    certificate = certify(sextic_intro())
    assert [step.slices for step in certificate.steps] == [(3,)]
    residual = certificate.steps[0].residual_spec
    assert residual.schemes[3].staircase == Staircase.from_heights(2, {(0,): 2, (1,): 2, (2,): 1})
    assert certificate.leaf.dimension == 12
    assert certificate.status == CertificateStatus.PROVEN


def test_auto_strategy_on_quintic():
    certificate = certify(quintic_intro())
    assert [step.slices for step in certificate.steps] == [(1,)]
    assert certificate.steps[0].residual_spec.schemes[3].divisor_shift == 1
    assert certificate.claimed_dimension == 11
    assert certificate.status == CertificateStatus.PROVEN


def test_quintic_rejected_slices():
    with pytest.raises(HypothesisFailed) as failed:
        horace_step(quintic_intro(), 3, [3])
    assert (failed.value.dim_lhs, failed.value.dim_rhs) == (16, 14)
    with pytest.raises(HypothesisFailed) as failed:
        horace_step(quintic_intro(), 3, [2])
    assert (failed.value.dim_lhs, failed.value.dim_rhs) == (15, 14)


def test_special_system_is_inconclusive():
    certificate = certify(conic_special())
    assert certificate.steps == ()
    assert certificate.status == CertificateStatus.INCONCLUSIVE
    assert certificate.claimed_dimension == 0
    assert certificate.virtual_dimension == -1


def test_system_without_generic_schemes():
    certificate = certify(SystemSpec(n=2, d=2))
    assert certificate.status == CertificateStatus.PROVEN
    assert certificate.claimed_dimension == 5


def test_explicit_special_system_is_upper_bound_only():
    # five collinear points impose four conditions on conics
    schemes = tuple(explicit(simple(), 0, j) for j in range(5))
    certificate = certify(SystemSpec(n=2, d=2, schemes=schemes))
    assert certificate.claimed_dimension == 2
    assert certificate.virtual_dimension == 0
    assert certificate.status == CertificateStatus.UPPER_BOUND_ONLY


def test_failed_hypothesis():
    spec = SystemSpec(n=2, d=5, schemes=(generic(simple()),))
    with pytest.raises(HypothesisFailed) as failed:
        horace_step(spec, 0, [1])
    assert (failed.value.i, failed.value.n_i) == (1, 1)
    assert (failed.value.dim_lhs, failed.value.dim_rhs) == (19, 14)


def test_explicit_strategy_propagates_failure():
    spec = SystemSpec(n=2, d=5, schemes=(generic(simple()),))
    with pytest.raises(HypothesisFailed):
        certify(spec, [(0, [1])])


@pytest.mark.parametrize("slices", [[], [1, 3], [2, 2], [0]])
def test_bad_slices(slices):
    with pytest.raises(BadSliceSequence):
        horace_step(sextic_intro(), 3, slices)


def test_only_generic_schemes_move():
    with pytest.raises(AlreadySpecial):
        horace_step(sextic_intro(), 0, [1])
    step = horace_step(quintic_intro(), 3, [1])
    with pytest.raises(AlreadySpecial):
        horace_step(step.residual_spec, 3, [1])


def test_moving_index_out_of_range():
    with pytest.raises(PlacementError):
        horace_step(sextic_intro(), 4, [1])


def test_unknown_strategy():
    with pytest.raises(SpecError):
        certify(sextic_intro(), "greedy")


def test_replay_of_valid_certificate():
    assert replay(certify(sextic_intro(), [(3, [3, 1])])) == []
    assert replay(certify(conic_special())) == []


def test_replay_of_tampered_leaf():
    certificate = certify(sextic_intro(), [(3, [3, 1])])
    tampered = replace(certificate, leaf=replace(certificate.leaf, dimension=11, rank=12))
    assert len(replay(tampered)) == 1


def test_replay_of_tampered_hypothesis():
    certificate = certify(quintic_intro())
    step = certificate.steps[0]
    forged = replace(step.hypotheses[0], dim_lhs=13)
    tampered = replace(certificate, steps=(replace(step, hypotheses=(forged,)),))
    mismatches = replay(tampered)
    assert len(mismatches) == 1
    assert "hypothesis 1" in mismatches[0]


def test_replay_of_missing_hypothesis():
    certificate = certify(sextic_intro(), [(3, [3, 1])])
    step = certificate.steps[0]
    tampered = replace(certificate, steps=(replace(step, hypotheses=step.hypotheses[:1]),))
    assert len(replay(tampered)) == 1


def test_replay_with_another_seed_changes_nothing_for_generic_systems():
    certificate = certify(sextic_intro().with_seed(9), [(3, [3, 1])])
    assert certificate.seeds == (9,)
    assert certificate.claimed_dimension == 12
    assert replay(certificate) == []


def test_step_inequality_on_presets():
    for spec, slices in [(quintic_intro(), [1]), (sextic_intro(), [3, 1])]:
        step = horace_step(spec, 3, slices)
        before, after = step_inequality(spec, step, 11)
        assert before <= after


@pytest.mark.parametrize("seed", range(50))
def test_step_bounds_the_original_system(seed):
    spec, moving, slices = theorem_case(np.random.default_rng(seed), seed)
    step = horace_step(spec, moving, slices)
    before, after = step_inequality(spec, step, seed + 1000)
    assert before <= after

    certificate = certify(spec, [(moving, slices)])
    assert certificate.claimed_dimension >= dimension(spec)
    if certificate.status == CertificateStatus.PROVEN:
        assert dimension(spec) == certificate.virtual_dimension


@pytest.mark.parametrize("seed", range(50))
def test_multi_slice_step_bounds_the_original_system(seed):
    spec, moving, slices = multi_slice_case(np.random.default_rng(500 + seed), seed)
    step = horace_step(spec, moving, slices)
    assert len(step.hypotheses) == len(slices) >= 2
    before, after = step_inequality(spec, step, seed + 1000)
    assert before <= after

    certificate = certify(spec, [(moving, slices)])
    assert certificate.claimed_dimension >= dimension(spec)
    assert replay(certificate) == []


def collinear_conics() -> SystemSpec:
    # five collinear points impose four conditions on conics
    return SystemSpec(n=2, d=2, schemes=tuple(explicit(simple(), 0, j) for j in range(5)))


def test_replay_rederives_status():
    certificate = certify(collinear_conics())
    forged = replace(certificate, status=CertificateStatus.PROVEN)
    mismatches = replay(forged)
    assert len(mismatches) == 1
    assert "status" in mismatches[0]


def forged_failing_step() -> Certificate:
    spec = SystemSpec(n=2, d=5, schemes=(generic(simple()),))
    residual = residual_system(spec, 0, [1])
    step = HoraceStep(0, (1,), (HypothesisEvidence(1, 1, 19, 14, 0),), residual)
    return Certificate(spec, (step,), evaluate(residual), virtual_dimension(spec),
                       CertificateStatus.PROVEN, spec.prime, (spec.seed,))


def test_replay_flags_hypothesis_that_does_not_hold():
    mismatches = replay(forged_failing_step())
    assert len(mismatches) == 2
    assert "does not hold" in mismatches[0]
    assert "status" in mismatches[1]


def test_replay_flags_hypothesis_for_another_slice():
    certificate = certify(sextic_intro(), [(3, [3, 1])])
    step = certificate.steps[0]
    moved = replace(step.hypotheses[0], n_i=2)
    tampered = replace(certificate, steps=(replace(step, hypotheses=(moved,) + step.hypotheses[1:]),))
    mismatches = replay(tampered)
    assert len(mismatches) == 1
    assert "expected slice 3" in mismatches[0]


def test_replay_flags_foreign_seeds():
    certificate = certify(sextic_intro(), [(3, [3, 1])])
    assert len(replay(replace(certificate, seeds=(5,)))) == 1
    assert len(replay(replace(certificate, prime=101))) == 1
