"""Reports of replays: CSV rows and a YAML summary."""

import csv
from pathlib import Path

import yaml

from harness.errors import AnalysisError
from harness.measurement import RunMeasurement
from harness.replay import ReplayResult

JOB_COLUMNS = (
    "job",
    "cores",
    "vms",
    "outcome",
    "submit",
    "vm_running",
    "start",
    "completion",
    "reason",
)
METER_COLUMNS = ("meter", "time", "watts", "joules")


def _seconds(tick: int | None, tick_seconds: float) -> str:
    return "" if tick is None else repr(tick * tick_seconds)


def write_jobs(result: ReplayResult, path: Path) -> None:
    """Write one row per job."""
    tick = result.tick_seconds
    with path.open("w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(JOB_COLUMNS)
        for record in result.records:
            writer.writerow(
                (
                    record.job.id,
                    record.job.cores,
                    record.vm_count,
                    record.outcome,
                    _seconds(record.submitted, tick),
                    _seconds(record.running, tick),
                    _seconds(record.started, tick),
                    _seconds(record.completed, tick),
                    record.reason,
                )
            )


def write_meters(result: ReplayResult, path: Path) -> None:
    """Write one row per meter reading."""
    tick = result.tick_seconds
    with path.open("w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(METER_COLUMNS)
        for reading in result.readings:
            writer.writerow(
                (
                    reading.meter,
                    repr(reading.tick * tick),
                    repr(reading.watts),
                    repr(reading.joules),
                )
            )


def write_summary(measurement: RunMeasurement, path: Path) -> None:
    """Write the measurement of a run as YAML."""
    with path.open("w", encoding="utf-8") as file:
        yaml.dump(
            measurement.dict(), file, sort_keys=False, allow_unicode=True
        )


def load_summary(path: Path | str) -> RunMeasurement:
    """Read a measurement written by `write_summary`.

    Raises:
        AnalysisError: the file can't be read or isn't a measurement.

    """
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as file:
            content = yaml.safe_load(file)
    except (OSError, yaml.YAMLError) as err:
        raise AnalysisError(f"cannot read {path}: {err}") from None

    try:
        return RunMeasurement.parse_obj(content)
    except ValueError as err:
        raise AnalysisError(f"{path} isn't a measurement:\n{err}") from None


def write_report(result: ReplayResult, directory: Path | str) -> Path:
    """Write jobs, meter readings and summary in a directory.

    Meter readings are only written if the run was metered.

    Returns:
        summary (Path): the path of the summary file.

    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_jobs(result, directory / "jobs.csv")
    if result.energy:
        write_meters(result, directory / "meters.csv")

    summary = directory / "summary.yml"
    write_summary(result.measurement, summary)
    return summary
