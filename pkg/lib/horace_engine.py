from .definitions import *
from .errors import *
from .geometry import *
from .staircase import *

from dataclasses import replace
from typing import Optional, Sequence, Union
import logging


_LOG = logging.getLogger(__name__)

AUTO_STRATEGY = "auto"


def _moving_placement(spec: SystemSpec, moving_index: int) -> SchemePlacement:
    if not 0 <= moving_index < len(spec.schemes):
        raise PlacementError(
            f"moving index {moving_index} out of range for {len(spec.schemes)} schemes")
    placement = spec.schemes[moving_index]
    if placement.kind != PositionKind.GENERIC or placement.divisor_shift:
        raise AlreadySpecial(
            f"scheme {moving_index} is {placement.kind.value}, only generic schemes can move")
    return placement


def _on_divisor(staircase: Staircase, shift: int) -> SchemePlacement:
    # every step system puts the moving scheme at the same point of D,
    # since placements are seeded by (seed, index)
    return SchemePlacement(
        staircase, kind=PositionKind.GENERIC_ON_DIVISOR, divisor_shift=shift)


def hypothesis_systems(spec: SystemSpec, moving_index: int, i: int,
                       n_i: int) -> tuple[SystemSpec, SystemSpec]:
    """
    The two systems compared by the i-th hypothesis: L(-(i-1)D - Z) with Z
    the n_i-th slice of the moving staircase at its point of D, and L(-iD).
    Both are taken relative to the divisor multiplicity already in spec.
    """
    placement = _moving_placement(spec, moving_index)
    if i < 1 or n_i < 1:
        raise BadSliceSequence(f"hypothesis needs i >= 1 and n_i >= 1, got i={i}, n_i={n_i}")

    E = placement.staircase
    lhs = replace(spec.with_scheme(moving_index, _on_divisor(E.slice(n_i), spec.r + i - 1)),
                  r=spec.r + i - 1)
    rhs = replace(spec.with_scheme(moving_index, _on_divisor(Staircase.empty(E.n), 0)),
                  r=spec.r + i)
    return lhs, rhs


def check_hypothesis(spec: SystemSpec, moving_index: int, i: int, n_i: int) -> HypothesisEvidence:
    lhs, rhs = hypothesis_systems(spec, moving_index, i, n_i)
    evidence = HypothesisEvidence(
        i=i, n_i=n_i, dim_lhs=dimension(lhs), dim_rhs=dimension(rhs), seed=spec.seed)
    _LOG.debug(f"hypothesis {i} for scheme {moving_index}, slice {n_i}: "
               f"{evidence.dim_lhs} vs {evidence.dim_rhs}")
    return evidence


def residual_system(spec: SystemSpec, moving_index: int, slices: Sequence[int]) -> SystemSpec:
    placement = _moving_placement(spec, moving_index)
    check_slice_sequence(slices)
    moved = _on_divisor(placement.staircase.remove_slices(slices), spec.r + len(slices))
    return replace(spec.with_scheme(moving_index, moved), r=spec.r + len(slices))


def horace_step(spec: SystemSpec, moving_index: int, slices: Sequence[int]) -> HoraceStep:
    """
    One application of the differential Horace inequality

        dim L(-X(E)) <= dim L(-rD - S(E, n_1, ..., n_r))

    valid once L(-(i-1)D - T(E, n_i)) = L(-iD) for every i.
    Raises HypothesisFailed on the first hypothesis that does not hold.
    """
    slices = tuple(int(k) for k in slices)
    check_slice_sequence(slices)
    placement = _moving_placement(spec, moving_index)

    hypotheses = []
    for i, n_i in enumerate(slices, start=1):
        evidence = check_hypothesis(spec, moving_index, i, n_i)
        if not evidence.holds:
            raise HypothesisFailed(i, n_i, evidence.dim_lhs, evidence.dim_rhs)
        hypotheses.append(evidence)

    residual = residual_system(spec, moving_index, slices)
    step = HoraceStep(
        moving_index=moving_index,
        slices=slices,
        hypotheses=tuple(hypotheses),
        residual_spec=residual,
        virtual_dimension_before=virtual_dimension(spec),
        virtual_dimension_after=virtual_dimension(residual),
        conditions_removed=spec.total_conditions() - residual.total_conditions(),
    )
    _LOG.debug(f"step on scheme {moving_index} with slices {list(slices)}: "
               f"{placement.staircase.degree} -> {residual.schemes[moving_index].staircase.degree} "
               f"conditions, r={residual.r}")
    return step


def _auto_step(spec: SystemSpec) -> Optional[HoraceStep]:
    for index, placement in enumerate(spec.schemes):
        if placement.kind != PositionKind.GENERIC or placement.staircase.is_empty():
            continue
        for slices in decreasing_slice_sequences(placement.staircase.max_height):
            try:
                return horace_step(spec, index, slices)
            except HypothesisFailed as e:
                _LOG.debug(f"scheme {index}, slices {list(slices)}: {e}")
    return None


def _has_generic_scheme(spec: SystemSpec) -> bool:
    return any(p.kind == PositionKind.GENERIC and not p.staircase.is_empty()
               for p in spec.schemes)


def certificate_status(spec: SystemSpec, steps: Sequence[HoraceStep],
                       leaf: DimensionResult) -> CertificateStatus:
    """
    Proven when the leaf meets the virtual dimension of spec after steps
    whose hypotheses all hold; inconclusive when no step could be applied
    to a system that has a generic scheme.
    """
    if not steps and _has_generic_scheme(spec):
        return CertificateStatus.INCONCLUSIVE
    if all(h.holds for step in steps for h in step.hypotheses) and \
            leaf.dimension == virtual_dimension(spec):
        return CertificateStatus.PROVEN
    return CertificateStatus.UPPER_BOUND_ONLY


def certify(spec: SystemSpec,
            strategy: Union[str, Sequence[tuple[int, Sequence[int]]]] = AUTO_STRATEGY) -> Certificate:
    """
    Applies Horace steps in order, then computes the leaf dimension directly.

    The leaf dimension is an upper bound for the dimension of the initial
    system, the virtual dimension a lower bound; the certificate is proven
    when they meet.
    """
    validate_spec(spec)
    steps = []
    current = spec

    if isinstance(strategy, str):
        if strategy != AUTO_STRATEGY:
            raise SpecError(f"unknown strategy {strategy!r}")
        while True:
            step = _auto_step(current)
            if step is None:
                break
            _LOG.info(f"accepted step on scheme {step.moving_index} with slices {list(step.slices)}")
            steps.append(step)
            current = step.residual_spec
    else:
        for moving_index, slices in strategy:
            step = horace_step(current, moving_index, slices)
            _LOG.info(f"accepted step on scheme {moving_index} with slices {list(step.slices)}")
            steps.append(step)
            current = step.residual_spec

    leaf = evaluate(current)
    expected = virtual_dimension(spec)
    status = certificate_status(spec, steps, leaf)

    if status == CertificateStatus.PROVEN:
        _LOG.info(f"proven: dimension {leaf.dimension} after {len(steps)} steps")
    else:
        _LOG.warning(f"{status.value}: leaf dimension {leaf.dimension}, "
                     f"virtual dimension {expected}")

    return Certificate(
        initial_spec=spec,
        steps=tuple(steps),
        leaf=leaf,
        virtual_dimension=expected,
        status=status,
        prime=spec.prime,
        seeds=(spec.seed,),
    )


def step_inequality(spec: SystemSpec, step: HoraceStep, seed: int) -> tuple[int, int]:
    """
    dim of spec and of the step's residual system, both recomputed with
    another seed. A sound step gives first <= second.
    """
    return dimension(spec.with_seed(seed)), dimension(step.residual_spec.with_seed(seed))


def replay(certificate: Certificate) -> list[str]:
    """
    Reruns every stored step and the leaf with the stored prime and seed,
    and rederives the status from the recomputed numbers. Returns a
    description of every number or verdict that differs or does not hold.
    """
    mismatches = []
    initial = certificate.initial_spec
    if certificate.prime != initial.prime or certificate.seeds != (initial.seed,):
        mismatches.append(
            f"certificate prime {certificate.prime} and seeds {list(certificate.seeds)} "
            f"differ from the system's prime {initial.prime} and seed {initial.seed}")

    current = initial
    fresh_steps = []
    for k, step in enumerate(certificate.steps):
        if len(step.hypotheses) != len(step.slices):
            mismatches.append(
                f"step {k} has {len(step.hypotheses)} hypotheses for {len(step.slices)} slices")

        hypotheses = []
        for i, n_i in enumerate(step.slices, start=1):
            fresh = check_hypothesis(current, step.moving_index, i, n_i)
            hypotheses.append(fresh)
            if not fresh.holds:
                mismatches.append(
                    f"step {k} hypothesis {i} does not hold: {fresh.dim_lhs} != {fresh.dim_rhs}")
            if i > len(step.hypotheses):
                continue
            stored = step.hypotheses[i - 1]
            if (stored.i, stored.n_i) != (i, n_i):
                mismatches.append(
                    f"step {k} hypothesis {i}: stored for i={stored.i}, slice {stored.n_i}, "
                    f"expected slice {n_i}")
            elif stored != fresh:
                mismatches.append(
                    f"step {k} hypothesis {i}: stored {stored.dim_lhs}/{stored.dim_rhs}, "
                    f"recomputed {fresh.dim_lhs}/{fresh.dim_rhs}")

        residual = residual_system(current, step.moving_index, step.slices)
        if residual != step.residual_spec:
            mismatches.append(f"step {k} residual system differs from the stored one")
        fresh_steps.append(replace(step, hypotheses=tuple(hypotheses), residual_spec=residual))
        current = residual

    leaf = evaluate(current)
    if leaf != certificate.leaf:
        mismatches.append(
            f"leaf: stored dimension {certificate.leaf.dimension} rank {certificate.leaf.rank}, "
            f"recomputed dimension {leaf.dimension} rank {leaf.rank}")

    if virtual_dimension(initial) != certificate.virtual_dimension:
        mismatches.append("virtual dimension differs")

    status = certificate_status(initial, fresh_steps, leaf)
    if status != certificate.status:
        mismatches.append(f"status: stored {certificate.status.value}, rederived {status.value}")

    for mismatch in mismatches:
        _LOG.debug(f"replay mismatch: {mismatch}")
    return mismatches
