from .commands import *
from .definitions import *
from .errors import *
from .log_formatter import *
from .presets import PRESETS

from typing import Optional, Sequence
import argparse
import colorama
import logging
import sys


_LOG = logging.getLogger(__name__)


def _parse_slices(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(k) for k in value.split(",") if k.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='horace.py',
        description='Dimensions of linear systems through monomial schemes, '
                    'certified by the differential Horace method')

    parser.add_argument('command', choices=list(COMMANDS),
                        help='what to run')
    parser.add_argument('--spec', dest='spec_path', default=None,
                        help='system description (JSON file)')
    parser.add_argument('--preset', choices=sorted(PRESETS), default=None,
                        help='named system instead of --spec')
    parser.add_argument('--slices', type=_parse_slices, default=None,
                        help='strictly decreasing slice indices, e.g. 3,1')
    parser.add_argument('--moving', type=int, default=None,
                        help='index of the scheme moved onto the divisor')
    parser.add_argument('--seed', type=int, default=None,
                        help='seed for random placements (default: from spec, or 0)')
    parser.add_argument('--prime', type=int, default=None,
                        help=f"field characteristic (default: from spec, or {SystemSpec.prime})")
    parser.add_argument('--out', dest='output_path', default=None,
                        help='write JSON here instead of standard output')
    parser.add_argument('--replay', dest='replay_path', default=None,
                        help='certificate to re-check (certify only)')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='debug logging')
    return parser


def _setup_logging(verbose: bool):
    colorama.just_fix_windows_console()

    logHandler = logging.StreamHandler(sys.stderr)
    logHandler.setFormatter(LogFormatter(colors=sys.stderr.isatty()))
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO,
                        handlers=[logHandler], force=True)


def run(config: RunConfig) -> int:
    _LOG.info(f"Running {config.command}")
    try:
        if config.replay_path is not None and config.command != "certify":
            raise SpecError("--replay is only valid for certify")
        return COMMANDS[config.command](config).run()
    except HoraceError as e:
        _LOG.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR
    except OSError as e:
        _LOG.error(f"{e}")
        return EXIT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    _setup_logging(args.verbose)

    config = RunConfig(
        command=args.command,
        spec_path=args.spec_path,
        preset=args.preset,
        slices=args.slices,
        moving=args.moving,
        seed=args.seed,
        prime=args.prime,
        output_path=args.output_path,
        replay_path=args.replay_path,
        verbose=args.verbose,
    )
    return run(config)
