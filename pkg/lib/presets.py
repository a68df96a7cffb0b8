from .definitions import *
from .errors import *
from .staircase import *

from typing import Callable
import logging


_LOG = logging.getLogger(__name__)


def _collinear_on_divisor(m: int) -> list[SchemePlacement]:
    # three points of D = {X1 = 0} in the chart X0 = 1
    return [SchemePlacement(Staircase.big_point(2, m), PositionKind.EXPLICIT, (0, j))
            for j in range(3)]


def quintic_intro() -> SystemSpec:
    """
    Plane quintics through three collinear points and a generic triple point.
    """
    schemes = _collinear_on_divisor(1) + [SchemePlacement(Staircase.big_point(2, 3))]
    return SystemSpec(n=2, d=5, schemes=tuple(schemes))


def sextic_intro() -> SystemSpec:
    """
    Plane sextics double at three collinear points, with a generic triple point.
    """
    schemes = _collinear_on_divisor(2) + [SchemePlacement(Staircase.big_point(2, 3))]
    return SystemSpec(n=2, d=6, schemes=tuple(schemes))


def conic_special() -> SystemSpec:
    """
    Conics singular at two generic points: only the double line remains.
    """
    double = SchemePlacement(Staircase.big_point(2, 2))
    return SystemSpec(n=2, d=2, schemes=(double, double))


def ten_points_174() -> SystemSpec:
    _LOG.warning("ten_points_174 builds a matrix of about 15400x15400, "
                 "expect hours rather than seconds")
    point = SchemePlacement(Staircase.big_point(2, 55))
    return SystemSpec(n=2, d=174, schemes=(point,) * 10)


PRESETS: dict[str, Callable[[], SystemSpec]] = {
    "quintic_intro": quintic_intro,
    "sextic_intro": sextic_intro,
    "conic_special": conic_special,
    "ten_points_174": ten_points_174,
}

# moving scheme used by certify when no --moving is given
DEFAULT_MOVING = {
    "quintic_intro": 3,
    "sextic_intro": 3,
}


def get_preset(name: str) -> SystemSpec:
    if name not in PRESETS:
        raise SpecError(f"unknown preset {name!r}, expected one of {sorted(PRESETS)}")
    return PRESETS[name]()
