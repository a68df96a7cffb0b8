from .dechargeable import *
from .errors import *
from .oracle import *
from .staircase import *
from .trunc_algebra import *

from typing import Callable, Iterator
import json
import logging
import numpy as np


_LOG = logging.getLogger(__name__)

# each grid yields (label, passed)
Check = tuple[str, bool]


def slice_degree_grid(prime: int) -> Iterator[Check]:
    for n in (1, 2, 3):
        for E in enumerate_staircases(n, 8):
            for slices in decreasing_slice_sequences(E.max_height + 1):
                expected = E.degree - sum(E.slice(k).degree for k in slices)
                yield f"{E.points()} {list(slices)}", E.remove_slices(slices).degree == expected


def slice_invariance_grid(prime: int) -> Iterator[Check]:
    for n in (1, 2, 3):
        for E in enumerate_staircases(n, 8):
            top = E.max_height + 1
            for n1 in range(2, top + 1):
                for n2 in range(1, n1):
                    ok = E.remove_slice(n1).slice(n2).degree == E.slice(n2).degree
                    yield f"{E.points()} {n1} {n2}", ok


def monomial_residue_grid(prime: int) -> Iterator[Check]:
    for n in (1, 2):
        for E in enumerate_staircases(n, 5):
            for q in (1, 2):
                for s in (2, 3, 4):
                    colon = colon_x1(monomial_ideal(E, q, s, prime))
                    expected = monomial_ideal(E.remove_slice(1).truncate(s - 1), q, s, prime)
                    yield f"{E.points()} q={q} s={s}", colon.equals(expected)


def staircase_ideal_grid(prime: int) -> Iterator[Check]:
    for n in (1, 2):
        for E in enumerate_staircases(n, 4):
            for q in (2, 3):
                for s in (2, 3):
                    J = translated_ideal(E, q, s, prime)
                    yield f"{E.points()} q={q} s={s}", is_staircase_ideal(J, E)


def graded_grid(prime: int) -> Iterator[Check]:
    for E in enumerate_staircases(2, 4):
        for q in (1, 2, 3):
            for s in (1, 2, 3):
                ring = TruncRing(2, q, s, prime)
                embedded = graded_embedding(graded_decomposition(E, q, s, prime), ring)
                yield f"{E.points()} q={q} s={s}", embedded.equals(translated_ideal(E, q, s, prime))


def random_dechargeable(rng: np.random.Generator, prime: int, max_h: int = 5,
                        max_q: int = 5, max_s: int = 6) -> DechargeableIdeal:
    """
    A translated ideal ((x1 - t)^h) pushed through a few random
    colon-and-restrict moves.
    """
    h = int(rng.integers(0, max_h + 1))
    q = int(rng.integers(1, max_q + 1))
    s = int(rng.integers(1, max_s + 1))
    ideal = DechargeableIdeal.translated(TruncRing(1, q, s, prime), h)
    for _ in range(int(rng.integers(0, 3))):
        if ideal.ring.q < 2 or ideal.ring.s < 2:
            break
        q = int(rng.integers(1, ideal.ring.q))
        s = int(rng.integers(1, ideal.ring.s))
        ideal = dechargeable_restrict_colon(ideal, q, s)
    return ideal


def dechargeable_grid(prime: int, count: int = 100, seed: int = 0) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        ideal = random_dechargeable(rng, prime)
        ring = ideal.ring
        closed = TruncIdeal.generated_by(ring, dechargeable_colon(ideal))
        brute = brute_colon(ideal.ideal().span.tolist(), 1, ring.q, ring.s, prime)
        label = (f"h={ideal.h} betas={list(ideal.betas)} alphas={list(ideal.alphas)} "
                 f"q={ring.q} s={ring.s} generators={json.dumps(closed.to_json())}")
        yield label, spans_equal(closed.span.tolist(), brute, prime)


def dechargeable_staircase_grid(prime: int, count: int = 60, seed: int = 1) -> Iterator[Check]:
    # a dechargeable ideal of height H is a staircase ideal of the length-H segment
    rng = np.random.default_rng(seed)
    for _ in range(count):
        ideal = random_dechargeable(rng, prime, max_q=4, max_s=5)
        label = f"h={ideal.h} betas={list(ideal.betas)} alphas={list(ideal.alphas)} height={ideal.height}"
        yield label, is_staircase_ideal(ideal.ideal(), Staircase.big_point(1, ideal.height))


def graded_predicate_grid(prime: int) -> Iterator[Check]:
    staircases = list(enumerate_staircases(2, 3))
    for E in staircases:
        for q in (2, 3):
            for s in (2, 3):
                J = translated_ideal(E, q, s, prime)
                components = graded_decomposition(E, q, s, prime)
                for target in staircases:
                    whole = is_staircase_ideal(J, target)
                    parts = is_graded_staircase_ideal(components, target)
                    yield f"{E.points()} against {target.points()} q={q} s={s}", whole == parts


GRIDS: dict[str, Callable[[int], Iterator[Check]]] = {
    "slice_degree": slice_degree_grid,
    "slice_invariance": slice_invariance_grid,
    "monomial_residue": monomial_residue_grid,
    "staircase_ideal": staircase_ideal_grid,
    "graded_decomposition": graded_grid,
    "dechargeable_colon": dechargeable_grid,
    "dechargeable_staircase": dechargeable_staircase_grid,
    "graded_predicate": graded_predicate_grid,
}


def run_selftest(prime: int) -> dict[str, dict[str, int]]:
    report = {}
    for name, grid in GRIDS.items():
        _LOG.info(f"Running grid {name}")
        passed = failed = 0
        try:
            for label, ok in grid(prime):
                if ok:
                    passed += 1
                else:
                    failed += 1
                    _LOG.warning(f"{name}: check failed for {label}")
        except HoraceError as e:
            failed += 1
            _LOG.warning(f"{name}: grid aborted: {e}")
        _LOG.debug(f"{name}: {passed} passed, {failed} failed")
        report[name] = {"passed": passed, "failed": failed}
    return report
