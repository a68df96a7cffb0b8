from .errors import *

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence
from typing_extensions import Self
import functools
import itertools
import logging


_LOG = logging.getLogger(__name__)

Point = tuple[int, ...]


# Staircase is a finite downward-closed subset E of N^n, stored as its
# height function along the x1 axis: heights maps (a2, ..., an) to the
# number of a1 with (a1, a2, ..., an) in E. Zero heights are not stored,
# so two equal staircases always have equal representations.
@dataclass(frozen=True)
class Staircase:
    n: int
    heights: tuple[tuple[Point, int], ...]

    @classmethod
    def empty(cls, n: int) -> Self:
        if n < 1:
            raise BadLatticeDimension(f"lattice dimension must be >= 1, got {n}")
        return cls(n, ())

    @classmethod
    def from_heights(cls, n: int, heights: Mapping[Point, int]) -> Self:
        if n < 1:
            raise BadLatticeDimension(f"lattice dimension must be >= 1, got {n}")

        cleaned = {}
        for key, h in heights.items():
            key = tuple(int(c) for c in key)
            if len(key) != n - 1 or any(c < 0 for c in key):
                raise NotAStaircase(f"bad height key {key} for lattice dimension {n}")
            if h < 0:
                raise NotAStaircase(f"negative height {h} at {key}")
            if h > 0:
                cleaned[key] = int(h)

        # h(a + b) <= h(a) is equivalent to checking unit steps down
        for key, h in cleaned.items():
            for i, c in enumerate(key):
                if c == 0:
                    continue
                below = key[:i] + (c - 1,) + key[i + 1:]
                if cleaned.get(below, 0) < h:
                    raise NotAStaircase(
                        f"height {h} at {key} exceeds height "
                        f"{cleaned.get(below, 0)} at {below}")

        return cls(n, tuple(sorted(cleaned.items())))

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], n: Optional[int] = None) -> Self:
        point_set = set()
        for point in points:
            point = tuple(int(c) for c in point)
            if n is None:
                n = len(point)
            if len(point) != n or any(c < 0 for c in point):
                raise NotAStaircase(f"point {point} is not in N^{n}")
            point_set.add(point)

        if n is None:
            raise BadLatticeDimension("cannot infer lattice dimension of an empty point set")

        for point in point_set:
            for i, c in enumerate(point):
                if c > 0 and point[:i] + (c - 1,) + point[i + 1:] not in point_set:
                    raise NotAStaircase(
                        f"point {point} is present but "
                        f"{point[:i] + (c - 1,) + point[i + 1:]} is missing")

        heights = {}
        for point in point_set:
            heights[point[1:]] = heights.get(point[1:], 0) + 1

        return cls.from_heights(n, heights)

    @classmethod
    def big_point(cls, n: int, m: int) -> Self:
        """
        Staircase E_m = {a : a1 + ... + an < m} of a fat point of size m.
        """
        if m < 0:
            raise NotAStaircase(f"fat point size must be >= 0, got {m}")
        if n < 1:
            raise BadLatticeDimension(f"lattice dimension must be >= 1, got {n}")

        heights = {}
        for key in exponent_vectors(n - 1, m):
            heights[key] = m - sum(key)
        return cls.from_heights(n, heights)

    @functools.cached_property
    def _height_map(self) -> dict:
        return dict(self.heights)

    def height(self, key: Sequence[int]) -> int:
        return self._height_map.get(tuple(key), 0)

    @property
    def max_height(self) -> int:
        return max((h for _, h in self.heights), default=0)

    @property
    def degree(self) -> int:
        return sum(h for _, h in self.heights)

    def is_empty(self) -> bool:
        return not self.heights

    def contains(self, point: Sequence[int]) -> bool:
        if len(point) != self.n:
            return False
        return 0 <= point[0] < self.height(tuple(point[1:]))

    def points(self) -> list[Point]:
        result = []
        for key, h in self.heights:
            for a1 in range(h):
                result.append((a1,) + key)
        return sorted(result)

    def max_total_degree(self) -> int:
        return max((sum(p) for p in self.points()), default=-1)

    def slice(self, k: int) -> Self:
        """
        k-th slice T(E, k) = {(0, a2, ..., an) : (k-1, a2, ..., an) in E},
        a staircase supported in the hyperplane a1 = 0.
        """
        if k < 1:
            raise BadSliceSequence(f"slice index must be >= 1, got {k}")
        return type(self)(self.n, tuple((key, 1) for key, h in self.heights if h >= k))

    def remove_slice(self, k: int) -> Self:
        """
        Residual staircase S(E, k): every column of height >= k loses one box.
        """
        if k < 1:
            raise BadSliceSequence(f"slice index must be >= 1, got {k}")
        heights = {key: (h - 1 if h >= k else h) for key, h in self.heights}
        return type(self).from_heights(self.n, heights)

    def remove_slices(self, slices: Sequence[int]) -> Self:
        check_slice_sequence(slices, allow_empty=True)
        result = self
        for k in slices:
            result = result.remove_slice(k)
        return result

    def truncate(self, m: int) -> Self:
        """
        Intersection with E_m, i.e. the points of total degree < m.
        """
        return type(self).from_points(
            [p for p in self.points() if sum(p) < m], self.n)

    def outer_corners(self) -> list[Point]:
        """
        Exponents of the minimal monomial generators of the ideal I^E.
        """
        members = set(self.points())
        candidates = {(0,) * self.n}
        for point in members:
            for i in range(self.n):
                candidates.add(point[:i] + (point[i] + 1,) + point[i + 1:])

        corners = []
        for point in candidates:
            if point in members:
                continue
            if all(point[i] == 0 or point[:i] + (point[i] - 1,) + point[i + 1:] in members
                   for i in range(self.n)):
                corners.append(point)
        return sorted(corners)

    def render(self) -> str:
        if self.n != 2:
            return "\n".join(f"h{list(key)} = {h}" for key, h in self.heights) or "(empty)"
        if self.is_empty():
            return "(empty)"
        # columns are indexed by a2, boxes are stacked along a1
        width = max(key[0] for key, _ in self.heights) + 1
        rows = []
        for a1 in reversed(range(self.max_height)):
            rows.append("".join(
                "#" if self.height((a2,)) > a1 else "." for a2 in range(width)))
        return "\n".join(rows)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.points()]

    @classmethod
    def from_json(cls, value, n: int) -> Self:
        if isinstance(value, dict) and "big_point" in value:
            return cls.big_point(n, int(value["big_point"]))
        if not isinstance(value, list):
            raise NotAStaircase(f"staircase must be a point list, got {value!r}")
        return cls.from_points(value, n)


def check_slice_sequence(slices: Sequence[int], allow_empty: bool = False):
    if not slices and not allow_empty:
        raise BadSliceSequence("slice sequence must not be empty")
    for k in slices:
        if k < 1:
            raise BadSliceSequence(f"slice indices must be positive, got {list(slices)}")
    for a, b in zip(slices, slices[1:]):
        if a <= b:
            raise BadSliceSequence(f"slice indices must strictly decrease, got {list(slices)}")


def decreasing_slice_sequences(max_height: int) -> list[tuple[int, ...]]:
    """
    All non-empty sequences n_1 > ... > n_r > 0 with n_1 <= max_height,
    shortest first, then in descending lexicographic order.
    """
    result = []
    for r in range(1, max_height + 1):
        result.extend(itertools.combinations(range(max_height, 0, -1), r))
    return result


def exponent_vectors(n: int, bound: int) -> list[Point]:
    # exponent vectors in N^n of total degree < bound
    if n == 0:
        return [()] if bound > 0 else []
    result = []
    for head in range(bound):
        for tail in exponent_vectors(n - 1, bound - head):
            result.append((head,) + tail)
    return result
