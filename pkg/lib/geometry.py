from .definitions import *
from .errors import *
from .linalg import *
from .staircase import *

from dataclasses import dataclass, replace
from typing import Mapping, Sequence
import logging
import math
import numpy as np


_LOG = logging.getLogger(__name__)

# beyond this many matrix cells we are no longer at desk scale
_LARGE_MATRIX_CELLS = 2000 * 2000

_FRAME_ATTEMPTS = 16


# LocalFrame is a resolved placement: the point c in the affine chart
# X0 = 1 and the matrix A of y = c + A x.
@dataclass(frozen=True)
class LocalFrame:
    center: tuple[int, ...]
    axes: tuple[tuple[int, ...], ...]

    def is_aligned(self) -> bool:
        n = len(self.center)
        return self.center[0] == 0 and self.axes[0] == tuple(int(k == 0) for k in range(n))


@dataclass(frozen=True)
class ConditionsMatrix:
    matrix: np.ndarray
    # degree-d monomials in X0..Xn, one per column
    columns: tuple[tuple[int, ...], ...]
    # (scheme index, staircase point), one per row
    rows: tuple[tuple[int, Point], ...]
    prime: int

    def rank(self) -> int:
        if not self.rows or not self.columns:
            return 0
        return rank_mod_p(self.matrix, self.prime)


def validate_spec(spec: SystemSpec):
    if spec.n < 1:
        raise PlacementError(f"projective dimension must be >= 1, got {spec.n}")
    if spec.d < 0 or spec.r < 0:
        raise PlacementError(f"degree and divisor multiplicity must be >= 0, "
                             f"got d={spec.d}, r={spec.r}")
    if spec.seed < 0:
        raise PlacementError(f"seed must be >= 0, got {spec.seed}")
    if not is_field_modulus(spec.prime):
        raise PlacementError(f"modulus {spec.prime} is not an odd prime below 2^63")
    for i, placement in enumerate(spec.schemes):
        if placement.staircase.n != spec.n:
            raise PlacementError(
                f"scheme {i} has a staircase in N^{placement.staircase.n}, expected N^{spec.n}")
        if not 0 <= placement.divisor_shift <= spec.r:
            raise PlacementError(
                f"scheme {i} has divisor shift {placement.divisor_shift}, expected 0..{spec.r}")


def _affine_coordinates(coordinates: Sequence[int], n: int, prime: int) -> tuple[int, ...]:
    if len(coordinates) == n:
        return tuple(int(c) % prime for c in coordinates)
    if len(coordinates) == n + 1:
        if coordinates[0] % prime == 0:
            raise ChartViolation(f"point {list(coordinates)} lies on X0 = 0")
        inv = pow(int(coordinates[0]), -1, prime)
        return tuple(int(c) * inv % prime for c in coordinates[1:])
    raise PlacementError(f"expected {n} or {n + 1} coordinates, got {list(coordinates)}")


def _is_invertible(axes: tuple[tuple[int, ...], ...], prime: int) -> bool:
    matrix = as_field_matrix(list(axes), len(axes), prime)
    return rank_mod_p(matrix, prime) == len(axes)


def resolve_placement(spec: SystemSpec, index: int) -> LocalFrame:
    """
    Point and frame of scheme `index`. Random choices are drawn from a
    generator seeded by (seed, index), so a scheme keeps its point when
    other schemes are added, removed or replaced.
    """
    placement = spec.schemes[index]
    n, prime = spec.n, spec.prime
    rng = np.random.default_rng([spec.seed, index])

    if placement.kind == PositionKind.GENERIC:
        center = tuple(rng.integers(0, prime, size=n).tolist())
    elif placement.kind == PositionKind.GENERIC_ON_DIVISOR:
        center = (0,) + tuple(rng.integers(0, prime, size=n - 1).tolist())
    else:
        if placement.coordinates is None:
            raise PlacementError(f"scheme {index} is explicit but has no coordinates")
        center = _affine_coordinates(placement.coordinates, n, prime)

    on_divisor = placement.kind == PositionKind.GENERIC_ON_DIVISOR or (
        placement.kind == PositionKind.EXPLICIT and center[0] == 0)
    e1 = tuple(int(k == 0) for k in range(n))

    if placement.frame is not None:
        axes = tuple(tuple(int(v) % prime for v in row) for row in placement.frame)
        if len(axes) != n or any(len(row) != n for row in axes):
            raise PlacementError(f"scheme {index} frame must be a {n}x{n} matrix")
        if not _is_invertible(axes, prime):
            raise PlacementError(f"scheme {index} frame is singular mod {prime}")
    elif placement.kind == PositionKind.EXPLICIT:
        axes = tuple(tuple(int(j == k) for j in range(n)) for k in range(n))
    else:
        for _ in range(_FRAME_ATTEMPTS):
            rows = [tuple(rng.integers(0, prime, size=n).tolist()) for _ in range(n)]
            if on_divisor:
                rows[0] = e1
            axes = tuple(rows)
            if _is_invertible(axes, prime):
                break
        else:
            raise PlacementError(f"could not draw an invertible frame for scheme {index}")

    frame = LocalFrame(center, axes)
    if on_divisor and not frame.is_aligned():
        raise PlacementError(f"scheme {index} is on D but its frame is not x1-aligned")
    if placement.divisor_shift and not on_divisor:
        raise PlacementError(f"scheme {index} is residual along D but is not placed on D")
    return frame


def _poly_mul(f: dict, g: dict, cutoff: int, prime: int) -> dict:
    result = {}
    for ea, ca in f.items():
        da = sum(ea)
        for eb, cb in g.items():
            if da + sum(eb) > cutoff:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            result[e] = (result.get(e, 0) + ca * cb) % prime
    return {e: c for e, c in result.items() if c}


# _LocalChart expands chart monomials y^b in the local coordinates x of a
# frame, truncated at total degree <= cutoff.
class _LocalChart:
    def __init__(self, frame: LocalFrame, cutoff: int, prime: int):
        n = len(frame.center)
        self._cutoff = cutoff
        self._prime = prime
        zero = (0,) * n
        self._powers = []
        for k in range(n):
            linear = {zero: frame.center[k] % prime} if frame.center[k] % prime else {}
            for j in range(n):
                if frame.axes[k][j] % prime:
                    linear[tuple(int(i == j) for i in range(n))] = frame.axes[k][j] % prime
            self._powers.append([{zero: 1}, linear])
        self._cache = {}

    def _power(self, k, e):
        powers = self._powers[k]
        while len(powers) <= e:
            powers.append(_poly_mul(powers[-1], powers[1], self._cutoff, self._prime))
        return powers[e]

    def expand(self, exponents):
        if exponents not in self._cache:
            result = self._power(0, exponents[0])
            for k in range(1, len(exponents)):
                result = _poly_mul(result, self._power(k, exponents[k]), self._cutoff, self._prime)
            self._cache[exponents] = result
        return self._cache[exponents]


def local_expansion(form: Mapping[tuple[int, ...], int], frame: LocalFrame,
                    cutoff: int, prime: int) -> dict:
    """
    Taylor coefficients of the dehomogenised form F(1, y) at the frame's
    point, in the frame's coordinates, up to total degree `cutoff`.
    """
    chart = _LocalChart(frame, cutoff, prime)
    result = {}
    for exponents, c in form.items():
        for a, v in chart.expand(tuple(exponents[1:])).items():
            result[a] = (result.get(a, 0) + c * v) % prime
    return {a: c for a, c in result.items() if c}


def column_monomials(spec: SystemSpec) -> list[tuple[int, ...]]:
    """
    Degree-d monomials in X0..Xn divisible by X1^r.
    """
    if spec.r > spec.d:
        return []
    cofactors = [e for e in exponent_vectors(spec.n + 1, spec.d - spec.r + 1)
                 if sum(e) == spec.d - spec.r]
    return [(e[0], e[1] + spec.r) + e[2:] for e in cofactors]


def conditions_matrix(spec: SystemSpec) -> ConditionsMatrix:
    validate_spec(spec)
    columns = column_monomials(spec)

    rows = []
    entries = []
    for index, placement in enumerate(spec.schemes):
        points = placement.staircase.points()
        if not points:
            continue
        frame = resolve_placement(spec, index)
        chart = _LocalChart(frame, max(sum(a) for a in points), spec.prime)
        # a shifted scheme reads the cofactor F / X1^k
        shift = placement.divisor_shift
        expansions = []
        for column in columns:
            y = column[1:]
            expansions.append(chart.expand((y[0] - shift,) + y[1:]))
        for a in points:
            rows.append((index, a))
            entries.append([expansion.get(a, 0) for expansion in expansions])

    if len(rows) * len(columns) > _LARGE_MATRIX_CELLS:
        _LOG.warning(f"conditions matrix is {len(rows)}x{len(columns)}, "
                     f"elimination will take a while")

    matrix = np.zeros((len(rows), len(columns)), dtype=field_dtype(spec.prime))
    if entries and columns:
        matrix[:, :] = np.array(entries, dtype=field_dtype(spec.prime))

    _LOG.debug(f"conditions matrix for d={spec.d}, r={spec.r}: "
               f"{len(rows)} rows, {len(columns)} columns")
    return ConditionsMatrix(matrix, tuple(columns), tuple(rows), spec.prime)


def virtual_dimension(spec: SystemSpec) -> int:
    columns = math.comb(spec.n + spec.d - spec.r, spec.n) if spec.r <= spec.d else 0
    return max(columns - 1 - spec.total_conditions(), -1)


def evaluate(spec: SystemSpec) -> DimensionResult:
    conditions = conditions_matrix(spec)
    rank = conditions.rank()
    columns = len(conditions.columns)
    return DimensionResult(
        columns=columns,
        rank=rank,
        dimension=columns - 1 - rank,
        virtual_dimension=virtual_dimension(spec),
        prime=spec.prime,
        seed=spec.seed,
    )


def dimension(spec: SystemSpec) -> int:
    """
    Projective dimension of the system, -1 when it is empty. For generic
    placements this is an upper bound for the generic dimension, equal to
    it unless the random points hit a proper closed subset.
    """
    return evaluate(spec).dimension


def specialize_onto_divisor(spec: SystemSpec, index: int) -> SystemSpec:
    placement = spec.schemes[index]
    if placement.kind != PositionKind.GENERIC:
        raise AlreadySpecial(f"scheme {index} is already placed as {placement.kind.value}")
    special = replace(placement, kind=PositionKind.GENERIC_ON_DIVISOR, frame=None)
    return spec.with_scheme(index, special)
