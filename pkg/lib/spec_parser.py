from .definitions import *
from .errors import *
from .staircase import *

from typing import Any, Optional
import json
import logging


_LOG = logging.getLogger(__name__)

_SPEC_KEYS = {"n", "d", "r", "prime", "seed", "schemes"}
_SCHEME_KEYS = {"staircase", "position", "frame", "divisor_shift"}


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise SpecError(f"{where}: missing field '{key}'")
    return obj[key]


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"{where}: expected an integer, got {value!r}")
    return value


def _as_int_tuple(value, where: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise SpecError(f"{where}: expected a list of integers, got {value!r}")
    return tuple(_as_int(v, where) for v in value)


def _parse_position(value, where: str) -> tuple[PositionKind, Optional[tuple[int, ...]]]:
    # "generic", "generic_on_divisor" or {"explicit": [coordinates]}
    if isinstance(value, dict):
        if set(value) != {"explicit"}:
            raise SpecError(f"{where}.position: expected {{\"explicit\": [...]}}, got {value!r}")
        return PositionKind.EXPLICIT, _as_int_tuple(value["explicit"], f"{where}.position")
    if value not in (PositionKind.GENERIC.value, PositionKind.GENERIC_ON_DIVISOR.value):
        raise SpecError(f"{where}: unknown position {value!r}")
    return PositionKind(value), None


def _parse_scheme(obj, n: int, where: str) -> SchemePlacement:
    if not isinstance(obj, dict):
        raise SpecError(f"{where}: expected an object, got {obj!r}")
    unknown = set(obj) - _SCHEME_KEYS
    if unknown:
        raise SpecError(f"{where}: unknown fields {sorted(unknown)}")

    staircase = Staircase.from_json(_require(obj, "staircase", where), n)

    kind, coordinates = _parse_position(obj.get("position", PositionKind.GENERIC.value), where)

    frame = None
    if obj.get("frame") is not None:
        if not isinstance(obj["frame"], list):
            raise SpecError(f"{where}.frame: expected a matrix, got {obj['frame']!r}")
        frame = tuple(_as_int_tuple(row, f"{where}.frame") for row in obj["frame"])

    shift = _as_int(obj.get("divisor_shift", 0), f"{where}.divisor_shift")
    return SchemePlacement(staircase, kind, coordinates, frame, shift)


def parse_spec(obj: Any) -> SystemSpec:
    if not isinstance(obj, dict):
        raise SpecError(f"spec must be a JSON object, got {type(obj).__name__}")
    unknown = set(obj) - _SPEC_KEYS
    if unknown:
        raise SpecError(f"spec: unknown fields {sorted(unknown)}")

    n = _as_int(_require(obj, "n", "spec"), "spec.n")
    if n < 1:
        raise SpecError(f"spec.n must be >= 1, got {n}")
    schemes = obj.get("schemes", [])
    if not isinstance(schemes, list):
        raise SpecError(f"spec.schemes: expected a list, got {schemes!r}")

    return SystemSpec(
        n=n,
        d=_as_int(_require(obj, "d", "spec"), "spec.d"),
        r=_as_int(obj.get("r", 0), "spec.r"),
        schemes=tuple(_parse_scheme(s, n, f"spec.schemes[{i}]") for i, s in enumerate(schemes)),
        prime=_as_int(obj.get("prime", SystemSpec.prime), "spec.prime"),
        seed=_as_int(obj.get("seed", SystemSpec.seed), "spec.seed"),
    )


def dump_spec(spec: SystemSpec) -> dict:
    schemes = []
    for placement in spec.schemes:
        if placement.kind == PositionKind.EXPLICIT:
            position = {"explicit": list(placement.coordinates)}
        else:
            position = placement.kind.value
        scheme = {
            "staircase": placement.staircase.to_json(),
            "position": position,
        }
        if placement.frame is not None:
            scheme["frame"] = [list(row) for row in placement.frame]
        if placement.divisor_shift:
            scheme["divisor_shift"] = placement.divisor_shift
        schemes.append(scheme)
    return {
        "n": spec.n,
        "d": spec.d,
        "r": spec.r,
        "prime": spec.prime,
        "seed": spec.seed,
        "schemes": schemes,
    }


def dump_dimension(result: DimensionResult) -> dict:
    return {
        "columns": result.columns,
        "rank": result.rank,
        "dimension": result.dimension,
        "virtual_dimension": result.virtual_dimension,
        "prime": result.prime,
        "seed": result.seed,
    }


def _parse_dimension(obj, where: str) -> DimensionResult:
    if not isinstance(obj, dict):
        raise SpecError(f"{where}: expected an object, got {obj!r}")
    return DimensionResult(**{
        key: _as_int(_require(obj, key, where), f"{where}.{key}")
        for key in ("columns", "rank", "dimension", "virtual_dimension", "prime", "seed")
    })


def dump_certificate(certificate: Certificate) -> dict:
    steps = []
    for step in certificate.steps:
        steps.append({
            "moving_index": step.moving_index,
            "slices": list(step.slices),
            "hypotheses": [
                {"i": h.i, "n_i": h.n_i, "dim_lhs": h.dim_lhs, "dim_rhs": h.dim_rhs, "seed": h.seed}
                for h in step.hypotheses
            ],
            "residual_spec": dump_spec(step.residual_spec),
            "virtual_dimension_before": step.virtual_dimension_before,
            "virtual_dimension_after": step.virtual_dimension_after,
            "conditions_removed": step.conditions_removed,
        })
    return {
        "initial_spec": dump_spec(certificate.initial_spec),
        "steps": steps,
        "leaf": dump_dimension(certificate.leaf),
        "claimed_dimension": certificate.claimed_dimension,
        "virtual_dimension": certificate.virtual_dimension,
        "status": certificate.status.value,
        "prime": certificate.prime,
        "seeds": list(certificate.seeds),
    }


def _parse_step(obj, where: str) -> HoraceStep:
    if not isinstance(obj, dict):
        raise SpecError(f"{where}: expected an object, got {obj!r}")
    hypotheses = []
    for k, h in enumerate(_require(obj, "hypotheses", where)):
        at = f"{where}.hypotheses[{k}]"
        if not isinstance(h, dict):
            raise SpecError(f"{at}: expected an object, got {h!r}")
        hypotheses.append(HypothesisEvidence(**{
            key: _as_int(_require(h, key, at), f"{at}.{key}")
            for key in ("i", "n_i", "dim_lhs", "dim_rhs", "seed")
        }))
    return HoraceStep(
        moving_index=_as_int(_require(obj, "moving_index", where), f"{where}.moving_index"),
        slices=_as_int_tuple(_require(obj, "slices", where), f"{where}.slices"),
        hypotheses=tuple(hypotheses),
        residual_spec=parse_spec(_require(obj, "residual_spec", where)),
        virtual_dimension_before=_as_int(obj.get("virtual_dimension_before", 0), where),
        virtual_dimension_after=_as_int(obj.get("virtual_dimension_after", 0), where),
        conditions_removed=_as_int(obj.get("conditions_removed", 0), where),
    )


def parse_certificate(obj: Any) -> Certificate:
    if not isinstance(obj, dict):
        raise SpecError(f"certificate must be a JSON object, got {type(obj).__name__}")
    status_name = _require(obj, "status", "certificate")
    try:
        status = CertificateStatus(status_name)
    except ValueError:
        raise SpecError(f"certificate: unknown status {status_name!r}")
    steps = _require(obj, "steps", "certificate")
    if not isinstance(steps, list):
        raise SpecError(f"certificate.steps: expected a list, got {steps!r}")

    return Certificate(
        initial_spec=parse_spec(_require(obj, "initial_spec", "certificate")),
        steps=tuple(_parse_step(s, f"certificate.steps[{k}]") for k, s in enumerate(steps)),
        leaf=_parse_dimension(_require(obj, "leaf", "certificate"), "certificate.leaf"),
        virtual_dimension=_as_int(
            _require(obj, "virtual_dimension", "certificate"), "certificate.virtual_dimension"),
        status=status,
        prime=_as_int(_require(obj, "prime", "certificate"), "certificate.prime"),
        seeds=_as_int_tuple(_require(obj, "seeds", "certificate"), "certificate.seeds"),
    )


def _load_json(path: str):
    try:
        _LOG.info(f"Parsing {path}")
        with open(path) as fp:
            return json.load(fp)
    except FileNotFoundError:
        raise SpecError(f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise SpecError(f"error parsing JSON file {path}: {e}")


def load_spec(path: str) -> SystemSpec:
    return parse_spec(_load_json(path))


def load_certificate(path: str) -> Certificate:
    return parse_certificate(_load_json(path))
