from lib import *

import math
import numpy as np

PRIME = 2147483647


def generic(E: Staircase) -> SchemePlacement:
    return SchemePlacement(E)


def on_divisor(E: Staircase, shift: int = 0) -> SchemePlacement:
    return SchemePlacement(E, PositionKind.GENERIC_ON_DIVISOR, divisor_shift=shift)


def explicit(E: Staircase, *coordinates: int) -> SchemePlacement:
    return SchemePlacement(E, PositionKind.EXPLICIT, tuple(coordinates))


def simple(n: int = 2) -> Staircase:
    return Staircase.big_point(n, 1)


def failures(grid) -> list:
    return [label for label, ok in grid if not ok]


def random_spec(rng: np.random.Generator, seed: int) -> SystemSpec:
    """
    A small system on P^1 or P^2 mixing every kind of placement.
    """
    n = int(rng.integers(1, 3))
    d = int(rng.integers(0, 6))
    r = int(rng.integers(0, 2)) if d > 0 else 0
    shapes = list(enumerate_staircases(n, 3))

    schemes = []
    for _ in range(int(rng.integers(0, 4))):
        E = shapes[int(rng.integers(0, len(shapes)))]
        kind = int(rng.integers(0, 3))
        if kind == 0:
            schemes.append(generic(E))
        elif kind == 1:
            shift = int(rng.integers(0, r + 1))
            schemes.append(on_divisor(E, shift))
        else:
            coordinates = [int(c) for c in rng.integers(0, 50, size=n)]
            schemes.append(explicit(E, *coordinates))
    return SystemSpec(n=n, d=d, r=r, schemes=tuple(schemes), seed=seed)


def theorem_case(rng: np.random.Generator, seed: int) -> tuple[SystemSpec, int, tuple[int, ...]]:
    """
    A plane system with d explicit points on D, so that the top slice of
    the moving fat point always forces D, plus a few generic points.
    """
    d = int(rng.integers(2, 6))
    m = int(rng.integers(1, 4))
    schemes = [explicit(simple(), 0, j) for j in range(d)]
    for _ in range(int(rng.integers(0, 3))):
        schemes.append(generic(Staircase.big_point(2, int(rng.integers(1, 3)))))
    schemes.append(generic(Staircase.big_point(2, m)))
    spec = SystemSpec(n=2, d=d, schemes=tuple(schemes), seed=seed)
    return spec, len(schemes) - 1, (m,)


def multi_slice_case(rng: np.random.Generator, seed: int) -> tuple[SystemSpec, int, tuple[int, ...]]:
    """
    A plane system whose moving fat point takes two or three slices. Enough
    double points sit on D that every hypothesis forces the restriction to
    D to vanish: hypothesis i holds once
    max(3 - i, 0) * c + (m - n_i + 1) >= d - i + 2.
    """
    m = int(rng.integers(2, 4))
    sequences = [s for s in decreasing_slice_sequences(m) if len(s) >= 2]
    slices = sequences[int(rng.integers(0, len(sequences)))]
    # from the third slice on the moving slice alone has to force D
    d_max = min([5] + [m - n_i + i - 1 for i, n_i in enumerate(slices, start=1) if i >= 3])
    d = int(rng.integers(2, d_max + 1))
    c = max(math.ceil((d - m + slices[0]) / 2), d - m + slices[1] - 1, 0)
    c += int(rng.integers(0, 2))

    schemes = [explicit(Staircase.big_point(2, 2), 0, j) for j in range(c)]
    for _ in range(int(rng.integers(0, 3))):
        schemes.append(generic(simple()))
    schemes.append(generic(Staircase.big_point(2, m)))
    spec = SystemSpec(n=2, d=d, schemes=tuple(schemes), seed=seed)
    return spec, len(schemes) - 1, slices
