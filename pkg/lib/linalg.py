import logging
import numpy as np


_LOG = logging.getLogger(__name__)

# products of two reduced entries must fit into int64
_INT64_PRIME_LIMIT = 2**31

# placements are drawn by numpy int64 generators
MAX_PRIME = 2**63 - 1

_MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    # deterministic for p < 3.3e24, which covers every modulus we accept
    if p < 2:
        return False
    for base in _MILLER_RABIN_BASES:
        if p % base == 0:
            return p == base
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for base in _MILLER_RABIN_BASES:
        x = pow(base, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def is_field_modulus(p: int) -> bool:
    return 3 <= p <= MAX_PRIME and is_prime(p)


def field_dtype(prime: int):
    return np.int64 if prime < _INT64_PRIME_LIMIT else object


def as_field_matrix(rows, ncols: int, prime: int) -> np.ndarray:
    matrix = np.array(rows, dtype=field_dtype(prime)).reshape(-1, ncols)
    return matrix % prime


def row_reduce(matrix: np.ndarray, prime: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """
    Reduced row echelon form over F_p.

    Returns the non-zero rows and their pivot columns. The result is
    canonical: two matrices have the same row space iff their reduced
    forms are equal.
    """
    A = np.array(matrix, dtype=field_dtype(prime)) % prime
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nonzero = np.nonzero(A[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            A[[r, pivot]] = A[[pivot, r]]
        inv = pow(int(A[r, c]), -1, prime)
        A[r] = (A[r] * inv) % prime
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % prime
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def rank_mod_p(matrix: np.ndarray, prime: int) -> int:
    """
    Rank over F_p by forward elimination only.
    """
    A = np.array(matrix, dtype=field_dtype(prime)) % prime
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nonzero = np.nonzero(A[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            A[[r, pivot]] = A[[pivot, r]]
        inv = pow(int(A[r, c]), -1, prime)
        A[r] = (A[r] * inv) % prime
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if below.size:
            A[below] = (A[below] - np.outer(A[below, c], A[r])) % prime
        r += 1
    _LOG.debug(f"rank of {nrows}x{ncols} matrix over F_{prime} is {r}")
    return r


def nullspace(matrix: np.ndarray, prime: int) -> np.ndarray:
    """
    Basis of {v : matrix @ v = 0} over F_p, one vector per row.
    """
    ncols = matrix.shape[1]
    reduced, pivots = row_reduce(matrix, prime)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=field_dtype(prime))
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-reduced[i, f]) % prime
    return basis


def span_key(reduced: np.ndarray) -> tuple:
    """
    Hashable key of a reduced row echelon basis.
    """
    return (reduced.shape[1],) + tuple(tuple(int(x) for x in row) for row in reduced)
