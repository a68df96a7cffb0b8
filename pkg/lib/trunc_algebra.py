from .errors import *
from .linalg import *
from .staircase import *

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence
from typing_extensions import Self
import functools
import logging
import math
import numpy as np


_LOG = logging.getLogger(__name__)

# basis monomial t^b x^a of A(q, s, n), stored as (b, a)
Monomial = tuple[int, Point]

_STAIRCASE_PREDICATE_LIMIT = 25


# TruncRing is A(q, s, n) = k[t]/t^q (x) k[x1..xn]/m^s over F_p.
# As a vector space it has the monomial basis t^b x^a, b < q, |a| < s.
@dataclass(frozen=True)
class TruncRing:
    n: int
    q: int
    s: int
    prime: int

    def __post_init__(self):
        if self.n < 1:
            raise BadLatticeDimension(f"ring needs at least one x variable, got n={self.n}")
        if self.q < 1 or self.s < 1:
            raise BadTruncation(f"truncation orders must be >= 1, got q={self.q}, s={self.s}")

    @functools.cached_property
    def basis(self) -> tuple[Monomial, ...]:
        exponents = exponent_vectors(self.n, self.s)
        return tuple((b, a) for b in range(self.q) for a in exponents)

    @functools.cached_property
    def index(self) -> dict:
        return {m: i for i, m in enumerate(self.basis)}

    @property
    def dimension(self) -> int:
        return self.q * math.comb(self.n + self.s - 1, self.n)

    @functools.cached_property
    def _tables(self) -> dict:
        return {}

    def multiplication_table(self, monomial: Monomial) -> np.ndarray:
        """
        For each basis index j, the index of monomial * basis[j],
        or -1 when the product vanishes in the ring.
        """
        if monomial not in self._tables:
            b0, a0 = monomial
            table = np.full(len(self.basis), -1, dtype=np.int64)
            for j, (b, a) in enumerate(self.basis):
                target = (b + b0, tuple(x + y for x, y in zip(a, a0)))
                table[j] = self.index.get(target, -1)
            self._tables[monomial] = table
        return self._tables[monomial]

    def shift(self, vector: np.ndarray, monomial: Monomial) -> np.ndarray:
        table = self.multiplication_table(monomial)
        result = np.zeros_like(vector)
        mask = table >= 0
        result[table[mask]] = vector[mask]
        return result

    def x(self, i: int) -> Monomial:
        # 1-based, x(1) is the distinguished variable
        return (0, tuple(1 if k == i - 1 else 0 for k in range(self.n)))

    def t(self) -> Monomial:
        return (1, (0,) * self.n)

    def generator_monomials(self) -> list[Monomial]:
        return [self.x(i) for i in range(1, self.n + 1)] + [self.t()]


@dataclass(frozen=True)
class TruncElement:
    ring: TruncRing
    coeffs: Mapping[Monomial, int]

    def __post_init__(self):
        for (b, a), c in self.coeffs.items():
            if b >= self.ring.q or sum(a) >= self.ring.s or len(a) != self.ring.n:
                raise BadTruncation(f"monomial t^{b} x^{a} is not a basis monomial of {self.ring}")
            if c % self.ring.prime == 0:
                raise ValueError(f"zero coefficient stored for t^{b} x^{a}")

    @classmethod
    def truncated(cls, ring: TruncRing, terms: Mapping[Monomial, int]) -> Self:
        """
        Projection of a polynomial in t, x1..xn into the ring.
        """
        coeffs = {}
        for (b, a), c in terms.items():
            if b < ring.q and sum(a) < ring.s:
                c = (coeffs.get((b, a), 0) + c) % ring.prime
                if c:
                    coeffs[(b, a)] = c
                else:
                    coeffs.pop((b, a), None)
        return cls(ring, coeffs)

    @classmethod
    def monomial(cls, ring: TruncRing, b: int, a: Sequence[int], c: int = 1) -> Self:
        return cls.truncated(ring, {(b, tuple(a)): c})

    @classmethod
    def from_vector(cls, ring: TruncRing, vector: np.ndarray) -> Self:
        coeffs = {}
        for j in np.nonzero(vector)[0]:
            coeffs[ring.basis[int(j)]] = int(vector[j]) % ring.prime
        return cls(ring, coeffs)

    def to_vector(self) -> np.ndarray:
        vector = np.zeros(len(self.ring.basis), dtype=field_dtype(self.ring.prime))
        for m, c in self.coeffs.items():
            vector[self.ring.index[m]] = c
        return vector

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "TruncElement") -> "TruncElement":
        terms = dict(self.coeffs)
        for m, c in other.coeffs.items():
            terms[m] = terms.get(m, 0) + c
        return TruncElement.truncated(self.ring, terms)

    def __neg__(self) -> "TruncElement":
        return self.scale(-1)

    def __sub__(self, other: "TruncElement") -> "TruncElement":
        return self + (-other)

    def scale(self, c: int) -> "TruncElement":
        return TruncElement.truncated(self.ring, {m: v * c for m, v in self.coeffs.items()})

    def __mul__(self, other: "TruncElement") -> "TruncElement":
        terms = {}
        for (b1, a1), c1 in self.coeffs.items():
            for (b2, a2), c2 in other.coeffs.items():
                m = (b1 + b2, tuple(x + y for x, y in zip(a1, a2)))
                terms[m] = (terms.get(m, 0) + c1 * c2) % self.ring.prime
        return TruncElement.truncated(self.ring, terms)

    def divide_x1(self, beta: int) -> "TruncElement":
        """
        e = Q / x1^beta, defined only when every term of Q has x1-exponent >= beta.
        """
        terms = {}
        for (b, a), c in self.coeffs.items():
            if a[0] < beta:
                raise NotDivisible(f"term t^{b} x^{a} is not divisible by x1^{beta}")
            terms[(b, (a[0] - beta,) + a[1:])] = c
        return TruncElement(self.ring, terms)

    def restrict(self, ring: TruncRing) -> "TruncElement":
        return TruncElement.truncated(ring, dict(self.coeffs))

    def to_json(self) -> list:
        return [[b, list(a), c] for (b, a), c in sorted(self.coeffs.items())]


def translated_power(ring: TruncRing, h: int, alpha: Sequence[int] = ()) -> TruncElement:
    """
    (x1 - t)^h * x2^alpha2 ... xn^alphan, projected into the ring.
    """
    tail = tuple(alpha) or (0,) * (ring.n - 1)
    terms = {}
    for k in range(h + 1):
        terms[(h - k, (k,) + tail)] = math.comb(h, k) * (-1) ** (h - k)
    return TruncElement.truncated(ring, terms)


# TruncIdeal keeps its generators for presentation only; every comparison
# is done on span, the reduced row echelon basis of the ideal as a vector
# subspace of the ring.
@dataclass(frozen=True, eq=False)
class TruncIdeal:
    ring: TruncRing
    generators: tuple[TruncElement, ...]
    span: np.ndarray

    @classmethod
    def generated_by(cls, ring: TruncRing, generators: Sequence[TruncElement]) -> Self:
        rows = []
        for generator in generators:
            vector = generator.to_vector()
            for m in ring.basis:
                rows.append(ring.shift(vector, m))
        matrix = as_field_matrix(rows, len(ring.basis), ring.prime)
        span, _ = row_reduce(matrix, ring.prime)
        return cls(ring, tuple(generators), span)

    @classmethod
    def from_span(cls, ring: TruncRing, rows: np.ndarray) -> Self:
        span, _ = row_reduce(as_field_matrix(rows, len(ring.basis), ring.prime), ring.prime)
        generators = tuple(TruncElement.from_vector(ring, row) for row in span)
        return cls(ring, generators, span)

    @classmethod
    def unit(cls, ring: TruncRing) -> Self:
        return cls.generated_by(ring, [TruncElement.monomial(ring, 0, (0,) * ring.n)])

    @classmethod
    def zero(cls, ring: TruncRing) -> Self:
        return cls.from_span(ring, np.zeros((0, len(ring.basis)), dtype=np.int64))

    @property
    def dimension(self) -> int:
        return int(self.span.shape[0])

    @functools.cached_property
    def key(self) -> tuple:
        return (self.ring, span_key(self.span))

    def equals(self, other: "TruncIdeal") -> bool:
        return self.ring == other.ring and self.key == other.key

    def issubset(self, other: "TruncIdeal") -> bool:
        if self.ring != other.ring:
            return False
        if self.dimension == 0:
            return True
        stacked = np.vstack([other.span, self.span])
        return rank_mod_p(stacked, self.ring.prime) == other.dimension

    def contains(self, element: TruncElement) -> bool:
        stacked = np.vstack([self.span, element.to_vector().reshape(1, -1)])
        return rank_mod_p(stacked, self.ring.prime) == self.dimension

    def is_closed(self) -> bool:
        """
        Whether span is stable under multiplication by every xi and by t.
        """
        shifted = [self.ring.shift(row, m)
                   for row in self.span for m in self.ring.generator_monomials()]
        if not shifted:
            return True
        stacked = np.vstack([self.span] + [row.reshape(1, -1) for row in shifted])
        return rank_mod_p(stacked, self.ring.prime) == self.dimension

    def to_json(self) -> list:
        return [g.to_json() for g in self.generators]


def monomial_ideal(E: Staircase, q: int, s: int, prime: int) -> TruncIdeal:
    """
    I^E: the ideal generated by the monomials x^a with a outside E.
    """
    ring = TruncRing(E.n, q, s, prime)
    outside = [j for j, (_, a) in enumerate(ring.basis) if not E.contains(a)]
    span = np.zeros((len(outside), len(ring.basis)), dtype=field_dtype(prime))
    for row, j in enumerate(outside):
        span[row, j] = 1
    generators = tuple(TruncElement.monomial(ring, 0, a)
                       for a in E.outer_corners() if sum(a) < s)
    return TruncIdeal(ring, generators, span)


def translated_ideal(E: Staircase, q: int, s: int, prime: int) -> TruncIdeal:
    """
    J(E, q, s): the translate of I^E along x1 -> x1 - t, generated by
    (x1 - t)^h_E(alpha) x^alpha for every alpha = (alpha2..alphan), including
    the columns of height zero which contribute pure monomials.
    """
    ring = TruncRing(E.n, q, s, prime)
    generators = [translated_power(ring, E.height(alpha), alpha)
                  for alpha in exponent_vectors(E.n - 1, s)]
    return TruncIdeal.generated_by(ring, generators)


def colon_x1(ideal: TruncIdeal) -> TruncIdeal:
    """
    (I : x1) as the preimage of span(I) under multiplication by x1.
    """
    ring = ideal.ring
    prime = ring.prime
    size = len(ring.basis)
    table = ring.multiplication_table(ring.x(1))

    # column j of mult holds x1 * basis[j]
    mult = np.zeros((size, size), dtype=field_dtype(prime))
    for j, target in enumerate(table):
        if target >= 0:
            mult[int(target), j] = 1

    # reduce the image modulo span(I); pivot coordinates then vanish
    _, pivots = row_reduce(ideal.span, prime)
    reduced = mult.copy()
    if pivots:
        reduced = (mult - ideal.span.T @ mult[list(pivots), :]) % prime

    kernel = nullspace(reduced, prime)
    _LOG.debug(f"colon by x1 in A({ring.q},{ring.s},{ring.n}): "
               f"{ideal.dimension} -> {kernel.shape[0]}")
    return TruncIdeal.from_span(ring, kernel)


def restrict(ideal: TruncIdeal, q: int, s: int) -> TruncIdeal:
    """
    Image of the ideal under the projection A(q0, s0, n) -> A(q, s, n).
    """
    ring = ideal.ring
    if not (0 < q <= ring.q and 0 < s <= ring.s):
        raise BadTruncation(
            f"cannot restrict A({ring.q},{ring.s},{ring.n}) to A({q},{s},{ring.n})")
    target = TruncRing(ring.n, q, s, ring.prime)
    columns = [ring.index[m] for m in target.basis]
    return TruncIdeal.from_span(target, ideal.span[:, columns])


def is_staircase_ideal(J: TruncIdeal, E: Staircase, _memo: Optional[dict] = None) -> bool:
    """
    Recursive staircase-ideal predicate. For q = 1 the ideal must be I^E;
    for q > 1 it must lie in I^T(E,q), and every restriction of (J : x1) to
    A(p, u, n) with p < q, u < s must be a staircase ideal of S(E, q).
    """
    ring = J.ring
    if E.n != ring.n:
        raise BadLatticeDimension(f"staircase in N^{E.n} against ring with n={ring.n}")

    if _memo is None:
        _memo = {}
        if ring.q * ring.s > _STAIRCASE_PREDICATE_LIMIT:
            _LOG.warning(f"staircase predicate on A({ring.q},{ring.s},{ring.n}) "
                         f"is beyond the supported range q*s <= {_STAIRCASE_PREDICATE_LIMIT}")

    key = (J.key, E)
    if key in _memo:
        return _memo[key]

    if ring.q == 1:
        result = J.equals(monomial_ideal(E, 1, ring.s, ring.prime))
    else:
        result = J.issubset(monomial_ideal(E.slice(ring.q), ring.q, ring.s, ring.prime))
        if result:
            colon = colon_x1(J)
            residual = E.remove_slice(ring.q)
            result = all(
                is_staircase_ideal(restrict(colon, p, u), residual, _memo)
                for p in range(1, ring.q)
                for u in range(1, ring.s))

    _memo[key] = result
    return result


def graded_decomposition(E: Staircase, q: int, s: int, prime: int) -> dict:
    """
    Components of J(E, q, s) along x2^alpha2 ... xn^alphan: for every alpha
    with |alpha| < s, the ideal ((x1 - t)^h_E(alpha)) of A(q, s - |alpha|, 1).
    """
    if E.n < 2:
        raise BadLatticeDimension("graded decomposition needs at least two x variables")

    components = {}
    for alpha in exponent_vectors(E.n - 1, s):
        column = Staircase.from_heights(1, {(): E.height(alpha)})
        components[alpha] = translated_ideal(column, q, s - sum(alpha), prime)
    return components


def graded_embedding(components: Mapping[Point, TruncIdeal], ring: TruncRing) -> TruncIdeal:
    """
    Direct sum of graded components, a term m of component alpha being sent to
    m * x2^alpha2 ... xn^alphan.
    """
    rows = []
    for alpha, component in components.items():
        for row in component.span:
            vector = np.zeros(len(ring.basis), dtype=field_dtype(ring.prime))
            for j in np.nonzero(row)[0]:
                b, (a1,) = component.ring.basis[int(j)]
                vector[ring.index[(b, (a1,) + tuple(alpha))]] = row[j]
            rows.append(vector)
    return TruncIdeal.from_span(ring, np.array(rows).reshape(-1, len(ring.basis)))


def is_graded_staircase_ideal(components: Mapping[Point, TruncIdeal], E: Staircase) -> bool:
    """
    Staircase-ideal predicate for a graded ideal, checked one component at
    a time: the component along x2^alpha2 ... xn^alphan must be a staircase
    ideal of the column of E over alpha.
    """
    if E.n < 2:
        raise BadLatticeDimension("graded components need at least two x variables")
    for alpha, component in components.items():
        column = Staircase.from_heights(1, {(): E.height(alpha)})
        if not is_staircase_ideal(component, column):
            return False
    return True
