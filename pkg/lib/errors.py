class HoraceError(Exception):
    pass


class NotAStaircase(HoraceError):
    pass


class BadSliceSequence(HoraceError):
    pass


class BadLatticeDimension(HoraceError):
    pass


class BadTruncation(HoraceError):
    pass


class NotDivisible(HoraceError):
    pass


class NotDechargeable(HoraceError):
    pass


class ChartViolation(HoraceError):
    pass


class PlacementError(HoraceError):
    pass


class AlreadySpecial(HoraceError):
    pass


class SpecError(HoraceError):
    pass


class ReplayMismatch(HoraceError):
    pass


class HypothesisFailed(HoraceError):
    # i is 1-based, as in the slice sequence n_1 > ... > n_r
    def __init__(self, i: int, n_i: int, dim_lhs: int, dim_rhs: int):
        super().__init__(
            f"hypothesis {i} (slice {n_i}) failed: dim {dim_lhs} != {dim_rhs}")
        self.i = i
        self.n_i = n_i
        self.dim_lhs = dim_lhs
        self.dim_rhs = dim_rhs
