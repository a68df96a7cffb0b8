from .staircase import *

from dataclasses import dataclass, replace
from typing import Optional
import enum


# PositionKind says where a monomial scheme sits in P^n. GENERIC schemes
# are drawn at random off the divisor D = {X1 = 0}, GENERIC_ON_DIVISOR ones
# at random on D, EXPLICIT ones at given coordinates.
class PositionKind(enum.Enum):
    GENERIC = "generic"
    GENERIC_ON_DIVISOR = "generic_on_divisor"
    EXPLICIT = "explicit"


# SchemePlacement is a monomial scheme X_phi(E): a staircase, a point and a
# local frame. The frame is the matrix A of y = c + A x, where y are the
# chart coordinates X_k / X_0 and x the local coordinates; on D the first
# row of A is e1, so that x1 is the equation of D.
# A scheme with divisor_shift k stands for kD + Z, i.e. its conditions apply
# to F / X1^k; k is set when a Horace step moves the scheme onto D.
@dataclass(frozen=True)
class SchemePlacement:
    staircase: Staircase
    kind: PositionKind = PositionKind.GENERIC
    # affine (n values) or projective (n + 1 values, X0 first)
    coordinates: Optional[tuple[int, ...]] = None
    frame: Optional[tuple[tuple[int, ...], ...]] = None
    divisor_shift: int = 0


# SystemSpec describes L(-rD - schemes) inside |O(d)| on P^n.
@dataclass(frozen=True)
class SystemSpec:
    n: int
    d: int
    r: int = 0
    schemes: tuple[SchemePlacement, ...] = ()
    prime: int = 2147483647
    seed: int = 0

    def with_scheme(self, index: int, placement: SchemePlacement) -> "SystemSpec":
        schemes = list(self.schemes)
        schemes[index] = placement
        return replace(self, schemes=tuple(schemes))

    def with_seed(self, seed: int) -> "SystemSpec":
        return replace(self, seed=seed)

    def total_conditions(self) -> int:
        return sum(p.staircase.degree for p in self.schemes)


@dataclass(frozen=True)
class DimensionResult:
    columns: int
    rank: int
    dimension: int
    virtual_dimension: int
    prime: int
    seed: int


# HypothesisEvidence records dim L(-(i-1)D - Z_{n_i}) and dim L(-iD).
@dataclass(frozen=True)
class HypothesisEvidence:
    i: int
    n_i: int
    dim_lhs: int
    dim_rhs: int
    seed: int

    @property
    def holds(self) -> bool:
        return self.dim_lhs == self.dim_rhs


@dataclass(frozen=True)
class HoraceStep:
    moving_index: int
    slices: tuple[int, ...]
    hypotheses: tuple[HypothesisEvidence, ...]
    residual_spec: SystemSpec
    # degree bookkeeping, recorded rather than asserted
    virtual_dimension_before: int = 0
    virtual_dimension_after: int = 0
    conditions_removed: int = 0


class CertificateStatus(enum.Enum):
    PROVEN = "proven"
    UPPER_BOUND_ONLY = "upper_bound_only"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Certificate:
    initial_spec: SystemSpec
    steps: tuple[HoraceStep, ...]
    leaf: DimensionResult
    virtual_dimension: int
    status: CertificateStatus
    prime: int
    seeds: tuple[int, ...]

    @property
    def claimed_dimension(self) -> int:
        return self.leaf.dimension


@dataclass
class RunConfig:
    command: str
    spec_path: Optional[str] = None
    preset: Optional[str] = None
    slices: Optional[tuple[int, ...]] = None
    moving: Optional[int] = None
    seed: Optional[int] = None
    prime: Optional[int] = None
    output_path: Optional[str] = None
    replay_path: Optional[str] = None
    verbose: bool = False
