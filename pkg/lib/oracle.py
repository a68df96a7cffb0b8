from .definitions import *
from .staircase import Staircase

from typing import Iterator, Sequence
import itertools
import logging
import math
import random


_LOG = logging.getLogger(__name__)

# Everything here is a slow, independent rederivation of the main path.
# Nothing from linalg, trunc_algebra or geometry is used.

Rows = list[list[int]]


def _eliminate(rows: Sequence[Sequence[int]], ncols: int, prime: int) -> Rows:
    # fully reduced basis, pivot columns taken from the last one down
    work = [[int(x) % prime for x in row] for row in rows]
    basis = []
    for c in reversed(range(ncols)):
        pivot = next((row for row in work if row[c]), None)
        if pivot is None:
            continue
        work.remove(pivot)
        inv = pow(pivot[c], prime - 2, prime)
        pivot = [x * inv % prime for x in pivot]
        work = [[(x - row[c] * y) % prime for x, y in zip(row, pivot)] if row[c] else row
                for row in work]
        basis = [[(x - row[c] * y) % prime for x, y in zip(row, pivot)] if row[c] else row
                 for row in basis]
        basis.append(pivot)
    return basis


def _rank(rows: Sequence[Sequence[int]], ncols: int, prime: int) -> int:
    return len(_eliminate(rows, ncols, prime))


def _kernel(rows: Sequence[Sequence[int]], ncols: int, prime: int) -> Rows:
    basis = _eliminate(rows, ncols, prime)
    pivots = {}
    for row in basis:
        c = max(j for j, x in enumerate(row) if x)
        pivots[c] = row
    kernel = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [0] * ncols
        v[free] = 1
        for c, row in pivots.items():
            v[c] = -row[free] % prime
        kernel.append(v)
    return kernel


def spans_equal(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], prime: int) -> bool:
    rows_a, rows_b = list(a), list(b)
    if not rows_a and not rows_b:
        return True
    ncols = len((rows_a or rows_b)[0])
    rank_a = _rank(rows_a, ncols, prime)
    return rank_a == _rank(rows_b, ncols, prime) == _rank(rows_a + rows_b, ncols, prime)


def _ring_monomials(n: int, q: int, s: int) -> list[tuple[int, tuple[int, ...]]]:
    result = []
    for b in range(q):
        for a in itertools.product(range(s), repeat=n):
            if sum(a) < s:
                result.append((b, a))
    return sorted(result)


def brute_colon(rows: Sequence[Sequence[int]], n: int, q: int, s: int, prime: int) -> Rows:
    """
    Basis of (I : x1) for the ideal of A(q, s, n) spanned by rows, found
    as the f-part of the kernel of (f, lam) -> x1 f - sum lam_k g_k.
    Coordinates follow the sorted (b, a) monomial order.
    """
    monomials = _ring_monomials(n, q, s)
    where = {m: i for i, m in enumerate(monomials)}
    size = len(monomials)
    gens = [[int(x) % prime for x in row] for row in rows]

    # one equation per monomial of the ring
    system = []
    for target in monomials:
        equation = [0] * (size + len(gens))
        b, a = target
        if a[0] > 0:
            source = (b, (a[0] - 1,) + a[1:])
            equation[where[source]] = 1
        for k, g in enumerate(gens):
            equation[size + k] = -g[where[target]] % prime
        system.append(equation)

    kernel = _kernel(system, size + len(gens), prime)
    return _eliminate([v[:size] for v in kernel], size, prime)


def enumerate_staircases(n: int, max_degree: int) -> Iterator[Staircase]:
    """
    Every staircase in N^n with at most max_degree points, exactly once,
    by increasing degree.
    """
    layer = {frozenset()}
    for degree in range(max_degree + 1):
        for points in sorted(layer, key=sorted):
            yield Staircase.from_points(points, n)
        if degree == max_degree:
            break
        grown = set()
        for points in layer:
            candidates = {(0,) * n}
            for p in points:
                for i in range(n):
                    candidates.add(p[:i] + (p[i] + 1,) + p[i + 1:])
            for c in candidates - points:
                if all(c[i] == 0 or c[:i] + (c[i] - 1,) + c[i + 1:] in points for i in range(n)):
                    grown.add(points | {c})
        layer = grown


def _derivative(poly: dict, k: int, prime: int) -> dict:
    result = {}
    for e, c in poly.items():
        if e[k]:
            lowered = e[:k] + (e[k] - 1,) + e[k + 1:]
            result[lowered] = (result.get(lowered, 0) + c * e[k]) % prime
    return {e: c for e, c in result.items() if c}


def _directional(poly: dict, v: Sequence[int], prime: int) -> dict:
    result = {}
    for k, vk in enumerate(v):
        if vk % prime == 0:
            continue
        for e, c in _derivative(poly, k, prime).items():
            result[e] = (result.get(e, 0) + c * vk) % prime
    return {e: c for e, c in result.items() if c}


def _evaluate(poly: dict, point: Sequence[int], prime: int) -> int:
    total = 0
    for e, c in poly.items():
        term = c
        for x, k in zip(point, e):
            term = term * pow(x, k, prime) % prime
        total += term
    return total % prime


def _taylor_coefficient(poly: dict, center: Sequence[int], axes: Sequence[Sequence[int]],
                        a: Sequence[int], prime: int) -> int:
    # coefficient of x^a in poly(c + A x) = (prod_j D_{A e_j}^{a_j} poly)(c) / a!
    n = len(center)
    current = poly
    factorial = 1
    for j, aj in enumerate(a):
        column = [axes[k][j] for k in range(n)]
        for _ in range(aj):
            current = _directional(current, column, prime)
        factorial = factorial * math.factorial(aj) % prime
    return _evaluate(current, center, prime) * pow(factorial, prime - 2, prime) % prime


def _random_frame(rng: random.Random, n: int, prime: int, aligned: bool) -> list[list[int]]:
    while True:
        axes = [[rng.randrange(prime) for _ in range(n)] for _ in range(n)]
        if aligned:
            axes[0] = [int(j == 0) for j in range(n)]
        if _rank(axes, n, prime) == n:
            return axes


def _placement(placement: SchemePlacement, n: int, prime: int,
               rng: random.Random) -> tuple[list[int], list[list[int]]]:
    if placement.kind == PositionKind.GENERIC:
        center = [rng.randrange(prime) for _ in range(n)]
    elif placement.kind == PositionKind.GENERIC_ON_DIVISOR:
        center = [0] + [rng.randrange(prime) for _ in range(n - 1)]
    else:
        coords = [int(c) for c in placement.coordinates]
        if len(coords) == n + 1:
            inv = pow(coords[0], prime - 2, prime)
            coords = [c * inv % prime for c in coords[1:]]
        center = [c % prime for c in coords]

    if placement.frame is not None:
        axes = [[int(x) % prime for x in row] for row in placement.frame]
    elif placement.kind == PositionKind.EXPLICIT:
        axes = [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        axes = _random_frame(rng, n, prime, placement.kind == PositionKind.GENERIC_ON_DIVISOR)
    return center, axes


def recompute_dimension(spec: SystemSpec, seed: int) -> int:
    """
    Dimension of the system from its own random placements, with rows
    taken scheme by scheme in reverse and columns in reverse degree order.
    """
    n, d, r, prime = spec.n, spec.d, spec.r, spec.prime
    rng = random.Random(seed)

    columns = []
    for combo in itertools.combinations_with_replacement(range(n + 1), d):
        exponents = tuple(combo.count(k) for k in range(n + 1))
        if exponents[1] >= r:
            columns.append(exponents)
    columns.reverse()

    rows = []
    for placement in reversed(spec.schemes):
        points = placement.staircase.points()
        if not points:
            continue
        center, axes = _placement(placement, n, prime, rng)
        shift = placement.divisor_shift
        monomials = [{(m[1] - shift,) + m[2:]: 1} for m in columns]
        for a in reversed(points):
            rows.append([_taylor_coefficient(f, center, axes, a, prime) for f in monomials])

    rank = _rank(rows, len(columns), prime) if rows and columns else 0
    _LOG.debug(f"recomputed {len(rows)}x{len(columns)} system of rank {rank}")
    return len(columns) - 1 - rank
