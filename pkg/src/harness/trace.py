"""Traces of jobs to replay."""

from dataclasses import dataclass, field
from typing import Iterator


@dataclass(frozen=True)
class TraceJob:

    """A job: `cores` cores fully used for `runtime` seconds.

    Times are in seconds, from the start of the trace.

    """

    id: str
    submit: float
    runtime: float
    cores: int = 1

    def __post_init__(self):
        if self.submit < 0:
            raise ValueError(f"job {self.id}: negative submit time")

        if not self.runtime > 0:
            raise ValueError(f"job {self.id}: runtime must be positive")

        if self.cores < 1:
            raise ValueError(f"job {self.id}: needs at least one core")


@dataclass
class Trace:

    """Jobs ordered by submit time.

    `filtered` counts the jobs dropped because no machine could host
    them, `malformed` lists the line numbers of unreadable rows (for
    archive traces).

    """

    jobs: list[TraceJob]
    source: str = "synthetic"
    filtered: int = 0
    malformed: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.jobs = sorted(self.jobs, key=lambda job: job.submit)

    def __len__(self):
        return len(self.jobs)

    def __iter__(self) -> Iterator[TraceJob]:
        return iter(self.jobs)

    @property
    def makespan_hint(self) -> float:
        """The latest completion if every job started at submission."""
        return max((job.submit + job.runtime for job in self.jobs), default=0)
