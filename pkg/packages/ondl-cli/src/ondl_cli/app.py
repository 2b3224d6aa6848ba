"""Command-line entry point: ``ondl <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import logging
import time
from pathlib import Path
from typing import TYPE_CHECKING, NoReturn

from ondl_cli import __version__
from ondl_cli.commands import COMMANDS, CommandContext
from ondl_cli.runs import RunRecorder
from ondl_cli.startup import build_run_config, init_logging
from ondl_common.config import load_settings
from ondl_common.errors import OndlError, UsageError
from ondl_common.models import Direction, McmcMode, NoiseMode, PatchMode, Subcommand

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

INTERNAL_ERROR_EXIT = 4
_MODES = [m.value for m in PatchMode] + [m.value for m in NoiseMode]


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as :class:`UsageError`."""

    def error(self, message: str) -> NoReturn:
        msg = f"{self.prog}: {message}"
        raise UsageError(msg)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    add = parser.add_argument
    add("--config", type=Path, help="JSON file of run settings; flags override it")
    add("--seed", type=int, help="64-bit seed of the run's random generator")
    add("--out-dir", dest="out_dir", type=Path, help="output directory")
    add("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")
    add("--edges", type=Path, help="edge list 'u v [w]' per line")
    add("--undirected", action="store_true", help="mirror every edge")
    add("--dictionary", type=Path, help="dictionary matrix file")
    add("--image", type=Path, help="PGM image")
    add("--labels", type=Path, help="'u,v,label' CSV for a pre-corrupted network")
    add("--motif-k", dest="motif_k", type=int, help="k of the k-chain motif")
    add("--patch-size", dest="patch_size", type=int, help="side of square patches")
    add("--atoms", type=int, help="number of dictionary atoms r")
    add("--lambda", dest="lambda", type=float, help="l1 penalty of sparse coding")
    add("--kappa1", type=float, help="ridge penalty on the dictionary")
    add("--kappa2", type=float, help="ridge penalty on the codes")
    add("--beta", type=float, help="weight exponent, w_t = t^-beta")
    add("--iters", type=int, help="factorization iterations T")
    add("--batch", type=int, help="samples per minibatch N")
    add("--steps", type=int, help="chain steps for reconstruction and diagnostics")
    add("--mcmc", choices=[m.value for m in McmcMode], help="motif chain")
    add("--temperature", type=float, help="Ising temperature")
    add("--epoch", type=int, help="Gibbs steps between consumed configurations")
    add("--lattice", type=int, help="Ising lattice side N")
    add("--mode", choices=_MODES, help="patch sampling or corruption mode")
    add("--fraction", type=float, help="corruption fraction of |E|")
    add("--threshold", type=float, help="classification threshold on recon weights")
    add("--direction", choices=[d.value for d in Direction], help="positive score side")
    add("--stride", type=int, help="reconstruction grid stride")
    add("--chains", type=int, help="independent diagnostic chains")


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with one subparser per pipeline."""
    parser = _Parser(
        prog="ondl",
        description="Online NMF for Markovian data and network dictionary learning.",
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for subcommand in Subcommand:
        sub = subparsers.add_parser(
            subcommand.value,
            help=COMMANDS[subcommand].__doc__,
            argument_default=argparse.SUPPRESS,
        )
        _add_common_flags(sub)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand; return 0, or the exit code of the raised error.

    Errors outside the ``OndlError`` hierarchy are logged with their traceback
    and exit with ``INTERNAL_ERROR_EXIT``.
    """
    settings = load_settings()
    recorder: RunRecorder | None = None
    try:
        flags = vars(build_parser().parse_args(argv))
        config = build_run_config(flags)
        init_logging(settings, config)
        recorder = RunRecorder(config)
        recorder.start()
        context = CommandContext.create(config, settings, recorder)
        started_at = time.monotonic()
        summary = COMMANDS[config.subcommand](context)
        summary["duration_ms"] = (time.monotonic() - started_at) * 1000
        recorder.complete(summary)
    except OndlError as exc:
        logger.error("%s", exc)  # noqa: TRY400
        if recorder is not None:
            recorder.fail(str(exc))
        return exc.exit_code
    except Exception as exc:
        logger.exception("Run aborted by an unexpected error")
        if recorder is not None:
            recorder.fail(f"{type(exc).__name__}: {exc}")
        return INTERNAL_ERROR_EXIT
    return 0
