from .definitions import *
from .errors import *
from .geometry import *
from .horace_engine import *
from .linalg import MAX_PRIME, is_field_modulus
from .oracle import recompute_dimension
from .presets import *
from .selftest import run_selftest
from .spec_parser import *
from .staircase import *

from dataclasses import replace
import abc
import json
import logging
import sys


_LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_PROVEN = 2


class BaseCommand(metaclass=abc.ABCMeta):
    needs_spec = True

    def __init__(self, config: RunConfig):
        self._config = config

    def run(self) -> int:
        self._check_config()
        spec = self._load_spec() if self.needs_spec else None
        result, status = self.execute(spec)
        self._write_result(result)
        return status

    @abc.abstractmethod
    def execute(self, spec: Optional[SystemSpec]) -> tuple[dict, int]:
        pass

    def _check_config(self):
        config = self._config
        if config.prime is not None and not is_field_modulus(config.prime):
            raise SpecError(f"--prime {config.prime} is not an odd prime <= {MAX_PRIME}")
        if config.seed is not None and config.seed < 0:
            raise SpecError(f"--seed must be >= 0, got {config.seed}")

    def _load_spec(self) -> SystemSpec:
        config = self._config
        if (config.spec_path is None) == (config.preset is None):
            raise SpecError(f"{config.command} needs exactly one of --spec or --preset")

        if config.preset is not None:
            spec = get_preset(config.preset)
        else:
            spec = load_spec(config.spec_path)

        if config.seed is not None:
            spec = replace(spec, seed=config.seed)
        if config.prime is not None:
            spec = replace(spec, prime=config.prime)
        _LOG.debug(f"loaded system n={spec.n} d={spec.d} r={spec.r} with "
                   f"{len(spec.schemes)} schemes, prime {spec.prime}, seed {spec.seed}")
        return spec

    def _write_result(self, result: dict):
        text = json.dumps(result, indent=2)
        if self._config.output_path is None:
            sys.stdout.write(text + "\n")
            return
        _LOG.info(f"Writing {self._config.output_path}")
        with open(self._config.output_path, "w") as fp:
            fp.write(text + "\n")


class DimCommand(BaseCommand):
    def execute(self, spec: Optional[SystemSpec]) -> tuple[dict, int]:
        result = evaluate(spec)
        if result.dimension > result.virtual_dimension:
            _LOG.info(f"system is special: dimension {result.dimension}, "
                      f"virtual dimension {result.virtual_dimension}")
        return dump_dimension(result), EXIT_OK


class CertifyCommand(BaseCommand):
    def run(self) -> int:
        if self._config.replay_path is not None:
            self._check_config()
            if self._config.spec_path is not None or self._config.preset is not None:
                raise SpecError("--replay cannot be combined with --spec or --preset")
            result, status = self._replay()
            self._write_result(result)
            return status
        return super().run()

    def _strategy(self, spec: SystemSpec):
        config = self._config
        if config.slices is None:
            if config.moving is not None:
                raise SpecError("--moving needs --slices")
            return AUTO_STRATEGY

        moving = config.moving
        if moving is None and config.preset is not None:
            moving = DEFAULT_MOVING.get(config.preset)
        if moving is None:
            generic = [i for i, p in enumerate(spec.schemes)
                       if p.kind == PositionKind.GENERIC and not p.staircase.is_empty()]
            if not generic:
                raise SpecError("--slices given but the system has no generic scheme to move")
            moving = generic[0]
        return [(moving, config.slices)]

    def execute(self, spec: Optional[SystemSpec]) -> tuple[dict, int]:
        certificate = certify(spec, self._strategy(spec))
        return dump_certificate(certificate), self._status(certificate.status)

    def _replay(self) -> tuple[dict, int]:
        certificate = load_certificate(self._config.replay_path)
        mismatches = replay(certificate)
        if mismatches:
            raise ReplayMismatch(
                f"{len(mismatches)} numbers differ on replay: " + "; ".join(mismatches))
        _LOG.info(f"replayed {len(certificate.steps)} steps, all numbers match")
        result = {
            "replayed": True,
            "steps": len(certificate.steps),
            "claimed_dimension": certificate.claimed_dimension,
            "status": certificate.status.value,
        }
        return result, self._status(certificate.status)

    def _status(self, status: CertificateStatus) -> int:
        return EXIT_OK if status == CertificateStatus.PROVEN else EXIT_NOT_PROVEN


class SlicesCommand(BaseCommand):
    def _report(self, staircase: Staircase) -> dict:
        report = {
            "points": staircase.to_json(),
            "degree": staircase.degree,
            "heights": [[list(key), h] for key, h in staircase.heights],
            "render": staircase.render(),
            "slices": [
                {"k": k, "points": staircase.slice(k).to_json(), "degree": staircase.slice(k).degree}
                for k in range(1, staircase.max_height + 1)
            ],
        }
        if self._config.slices is not None:
            removed = staircase.remove_slices(self._config.slices)
            report["removed"] = {
                "slices": list(self._config.slices),
                "points": removed.to_json(),
                "degree": removed.degree,
                "render": removed.render(),
            }
        return report

    def execute(self, spec: Optional[SystemSpec]) -> tuple[dict, int]:
        indices = range(len(spec.schemes))
        if self._config.moving is not None:
            if not 0 <= self._config.moving < len(spec.schemes):
                raise SpecError(f"--moving {self._config.moving} is not a scheme index")
            indices = [self._config.moving]
        schemes = []
        for i in indices:
            report = self._report(spec.schemes[i].staircase)
            report["index"] = i
            schemes.append(report)
        return {"schemes": schemes}, EXIT_OK


class OracleCommand(BaseCommand):
    def execute(self, spec: Optional[SystemSpec]) -> tuple[dict, int]:
        main = dimension(spec)
        # the oracle draws its own placements, from a different seed
        independent = recompute_dimension(spec, spec.seed + 1)
        agree = main == independent
        if not agree:
            _LOG.error(f"dimension {main} disagrees with oracle dimension {independent}")
        result = {
            "dimension": main,
            "oracle_dimension": independent,
            "agree": agree,
            "prime": spec.prime,
            "seed": spec.seed,
        }
        return result, EXIT_OK if agree else EXIT_ERROR


class SelftestCommand(BaseCommand):
    needs_spec = False

    def execute(self, spec: Optional[SystemSpec]) -> tuple[dict, int]:
        prime = self._config.prime or SystemSpec.prime
        report = run_selftest(prime)
        failed = sum(grid["failed"] for grid in report.values())
        if failed:
            _LOG.error(f"{failed} self-test checks failed")
        return report, EXIT_OK if not failed else EXIT_ERROR


COMMANDS = {
    "dim": DimCommand,
    "certify": CertifyCommand,
    "slices": SlicesCommand,
    "oracle": OracleCommand,
    "selftest": SelftestCommand,
}
