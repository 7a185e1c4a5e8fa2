"""Scaling analysis of replay measurements.

The scaling ratio of two runs of the same configuration compares their
wall-clock durations to their task counts:

    ratio = (n2 * duration1) / (n1 * duration2)

A ratio of 1 means the duration grew like the task count; a ratio
under 1 means it grew faster.

"""

from itertools import groupby
from operator import attrgetter
from pathlib import Path
from typing import Iterable

from beautifultable import BeautifulTable

from harness.errors import AnalysisError
from harness.measurement import RunMeasurement
from harness.report import load_summary


def scaling_ratio(first: RunMeasurement, second: RunMeasurement) -> float:
    """Return the scaling ratio between two runs.

    Raises:
        AnalysisError: the runs don't share their configuration or a
                run has no task.

    """
    if first.config_id != second.config_id:
        raise AnalysisError(
            f"can't compare runs of configurations {first.config_id} "
            f"and {second.config_id}"
        )

    if not first.task_count or not second.task_count:
        raise AnalysisError("can't compare runs without tasks")

    return (second.task_count * first.wall_seconds) / (
        first.task_count * second.wall_seconds
    )


def pairwise_ratios(
    measurements: Iterable[RunMeasurement],
) -> list[tuple[RunMeasurement, RunMeasurement, float]]:
    """Return the ratios between consecutive task counts of each config.

    Runs are grouped by configuration and ordered by task count; runs
    with the same task count aren't compared.

    """
    ordered = sorted(measurements, key=attrgetter("config_id", "task_count"))
    ratios = []
    for _, runs in groupby(ordered, key=attrgetter("config_id")):
        runs = list(runs)
        for first, second in zip(runs, runs[1:]):
            if first.task_count != second.task_count:
                ratios.append((first, second, scaling_ratio(first, second)))

    return ratios


def analyze(paths: Iterable[Path | str]) -> BeautifulTable:
    """Load summaries and tabulate their scaling ratios.

    Raises:
        AnalysisError: a summary can't be loaded, or no two runs can
                be compared.

    """
    measurements = [load_summary(path) for path in paths]
    ratios = pairwise_ratios(measurements)
    if not ratios:
        raise AnalysisError(
            "no two runs share a configuration with different task counts"
        )

    table = BeautifulTable()
    table.columns.header = (
        "Config",
        "Tasks",
        "Duration",
        "Next tasks",
        "Next duration",
        "Ratio",
    )
    table.columns.header.alignment = BeautifulTable.ALIGN_LEFT
    table.columns.alignment["Config"] = BeautifulTable.ALIGN_LEFT
    table.columns.alignment["Ratio"] = BeautifulTable.ALIGN_RIGHT
    table.set_style(BeautifulTable.STYLE_DEFAULT)
    for first, second, ratio in ratios:
        table.rows.append(
            (
                first.config_id,
                first.task_count,
                f"{first.wall_seconds:.3f}s",
                second.task_count,
                f"{second.wall_seconds:.3f}s",
                f"{ratio:.3f}",
            )
        )

    return table
