"""Tests for run metadata recording."""

import json
from pathlib import Path

from ondl_cli.runs import METADATA_FILE, RunRecorder
from ondl_common.models import RunConfig, RunStatus, Subcommand


def _recorder(tmp_path: Path) -> RunRecorder:
    config = RunConfig(
        subcommand=Subcommand.HOM_DIAG, seed=42, out_dir=tmp_path / "nested" / "run"
    )
    return RunRecorder(config)


def test_start_writes_running_record(tmp_path: Path) -> None:
    """Verify the output directory and a running record are created."""
    recorder = _recorder(tmp_path)
    recorder.start()
    assert recorder.path == tmp_path / "nested" / "run" / METADATA_FILE
    record = json.loads(recorder.path.read_text())
    assert record["status"] == "running"
    assert record["seed"] == 42
    assert record["command"] == "hom-diag"
    assert record["id"]
    assert record["completed_at"] is None


def test_outputs_are_registered(tmp_path: Path) -> None:
    """Verify output paths are created under the run directory and recorded."""
    recorder = _recorder(tmp_path)
    path = recorder.output("sub/tv_trace.csv")
    assert path.parent.is_dir()
    assert recorder.run.outputs == {"sub/tv_trace.csv": str(path)}


def test_complete_records_summary(tmp_path: Path) -> None:
    """Verify completion stores the summary and timestamps."""
    recorder = _recorder(tmp_path)
    recorder.start()
    run = recorder.complete({"final_tv": 0.01})
    assert run.status is RunStatus.COMPLETED
    assert run.completed_at is not None
    record = json.loads(recorder.path.read_text())
    assert record["summary"] == {"final_tv": 0.01}
    assert record["status"] == "completed"


def test_fail_records_error(tmp_path: Path) -> None:
    """Verify failures store the error message."""
    recorder = _recorder(tmp_path)
    run = recorder.fail("edges.txt:3: bad line")
    assert run.status is RunStatus.FAILED
    assert json.loads(recorder.path.read_text())["error"] == "edges.txt:3: bad line"


def test_package_versions_cover_numeric_stack() -> None:
    """Verify the versions table names every package that shapes output."""
    versions = RunRecorder.package_versions()
    assert {"numpy", "scipy", "networkx", "scikit-learn"} <= versions.keys()
    assert all(versions.values())
