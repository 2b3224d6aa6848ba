"""Tests for the command-line entry point and its exit codes."""

from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest

from ondl_cli.app import INTERNAL_ERROR_EXIT, build_parser, main
from ondl_cli.commands import COMMANDS, CommandContext
from ondl_common.models import Subcommand

type RunCli = Callable[..., tuple[int, dict[str, Any]]]


def test_every_subcommand_is_registered() -> None:
    """Verify the parser knows all six pipelines."""
    parser = build_parser()
    for name in (
        "ndl-learn",
        "reconstruct",
        "denoise",
        "ising-learn",
        "image-learn",
        "hom-diag",
    ):
        flags = vars(parser.parse_args([name, "--seed", "3"]))
        assert flags == {"subcommand": name, "seed": 3}


def test_flags_default_to_absent() -> None:
    """Verify unset flags are omitted so config files can supply them."""
    flags = vars(build_parser().parse_args(["hom-diag", "--lambda", "0.5"]))
    assert flags == {"subcommand": "hom-diag", "lambda": 0.5}


def test_missing_subcommand_is_usage_error() -> None:
    """Verify argument errors exit with code 1."""
    assert main([]) == 1


def test_unknown_flag_is_usage_error() -> None:
    """Verify unknown flags exit with code 1."""
    assert main(["ndl-learn", "--no-such-flag"]) == 1


def test_version_flag() -> None:
    """Verify --version prints and exits cleanly."""
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0


def test_out_of_range_parameter(run_cli: RunCli) -> None:
    """Verify parameter validation failures exit with code 1."""
    code, metadata = run_cli("ndl-learn", "--beta", "0.5")
    assert code == 1
    assert metadata == {}


def test_patch_mode_for_denoise(run_cli: RunCli) -> None:
    """Verify denoise rejects a patch sampling mode."""
    code, _ = run_cli("denoise", "--mode", "walk")
    assert code == 1


def test_missing_required_input(run_cli: RunCli, cycle_edges: Path) -> None:
    """Verify a missing dictionary is a usage error recorded in metadata."""
    code, metadata = run_cli("reconstruct", "--edges", cycle_edges)
    assert code == 1
    assert metadata["status"] == "failed"
    assert "--dictionary is required" in metadata["error"]


def test_malformed_edge_line(
    run_cli: RunCli, tmp_path: Path, caplog: pytest.LogCaptureFixture
) -> None:
    """Verify a bad edge line exits with code 2 and names its line number."""
    edges = tmp_path / "bad.txt"
    edges.write_text("0 1\n1 2 heavy\n")
    code, metadata = run_cli("ndl-learn", "--edges", edges)
    assert code == 2
    assert metadata["status"] == "failed"
    assert f"{edges}:2:" in metadata["error"]
    assert f"{edges}:2:" in caplog.text


def test_run_writes_log_file(
    run_cli: RunCli, cycle_edges: Path, tmp_path: Path
) -> None:
    """Verify each run logs to <out-dir>/logs/<command>.log."""
    code, _ = run_cli(
        "hom-diag", "--edges", cycle_edges, "--steps", "200", "--mcmc", "glauber"
    )
    assert code == 0
    log = (tmp_path / "run" / "logs" / "hom-diag.log").read_text()
    assert "Run completed" in log


def test_unexpected_error_is_recorded(
    run_cli: RunCli,
    cycle_edges: Path,
    monkeypatch: pytest.MonkeyPatch,
    caplog: pytest.LogCaptureFixture,
) -> None:
    """Verify an error outside the hierarchy is logged and marks the run failed."""

    def explode(_context: CommandContext) -> dict[str, float]:
        msg = "disk vanished"
        raise RuntimeError(msg)

    monkeypatch.setitem(COMMANDS, Subcommand.HOM_DIAG, explode)
    code, metadata = run_cli("hom-diag", "--edges", cycle_edges)
    assert code == INTERNAL_ERROR_EXIT
    assert metadata["status"] == "failed"
    assert metadata["error"] == "RuntimeError: disk vanished"
    assert "Traceback" in caplog.text
