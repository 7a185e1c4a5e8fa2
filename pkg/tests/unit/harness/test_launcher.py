from pathlib import Path

import pytest

from harness import load_archive_trace, load_summary
from process.launcher import Launcher

SAMPLE = Path(__file__).parents[3] / "data" / "sample.swf"

SCENARIO = """\
name: launcher
machines:
  - count: 2
    cores: 8
    profile: instant
image:
  size: 125000
  boot_seconds: 0
"""


@pytest.fixture
def scenario(tmp_path):
    path = tmp_path / "scenario.yml"
    path.write_text(SCENARIO, encoding="utf-8")
    return path


def test_generate(tmp_path, capsys):
    """The generate command writes a trace."""
    output = tmp_path / "trace.swf"
    status = Launcher().run(
        ["generate", str(output), "--tasks", "25", "--parallel", "5"]
    )
    assert status == 0
    assert "25 tasks written" in capsys.readouterr().out
    assert len(load_archive_trace(output)) == 25


def test_replay(tmp_path, scenario, capsys):
    """The replay command writes a report."""
    output = tmp_path / "out"
    status = Launcher().run(
        [
            "replay",
            str(SAMPLE),
            "--scenario",
            str(scenario),
            "--output",
            str(output),
            "--meter-period",
            "60",
        ]
    )
    assert status == 0
    printed = capsys.readouterr().out
    assert "2 job(s) filtered out" in printed
    assert "6/6 jobs done" in printed
    assert "energy:" in printed
    summary = load_summary(output / "summary.yml")
    assert summary.completed == 6
    assert summary.machine_count == 2
    assert (output / "jobs.csv").exists()
    assert (output / "meters.csv").exists()


def test_replay_synthetic(tmp_path, scenario, capsys):
    """With a seed, the replayed trace is generated and written."""
    trace = tmp_path / "generated.swf"
    output = tmp_path / "out"
    status = Launcher().run(
        [
            "replay",
            str(trace),
            "--scenario",
            str(scenario),
            "--output",
            str(output),
            "--seed",
            "2",
            "--limit",
            "10",
        ]
    )
    assert status == 0
    assert "10/10 jobs done" in capsys.readouterr().out
    assert len(load_archive_trace(trace)) == 10


def test_analyze(tmp_path, scenario, capsys):
    """The analyze command compares two replays of one scenario."""
    summaries = []
    for tasks in ("5", "10"):
        output = tmp_path / tasks
        arguments = ["replay", str(tmp_path / f"{tasks}.swf"), "--seed", "1"]
        arguments += ["--limit", tasks, "--scenario", str(scenario)]
        arguments += ["--output", str(output)]
        assert Launcher().run(arguments) == 0
        summaries.append(str(output / "summary.yml"))

    capsys.readouterr()
    assert Launcher().run(["analyze", *summaries]) == 0
    assert "Ratio" in capsys.readouterr().out


def test_errors(tmp_path):
    """Errors give an exit status of 1."""
    assert Launcher().run(["replay", str(tmp_path / "missing.swf")]) == 1
    assert Launcher().run(["analyze", str(tmp_path / "missing.yml")]) == 1


def test_no_command(capsys):
    """Without a command, the help is printed."""
    assert Launcher().run([]) == 0
    assert "usage" in capsys.readouterr().out
