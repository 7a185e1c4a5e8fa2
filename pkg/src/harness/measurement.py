"""Measurements of replays, compared by the analysis."""

import os

from pydantic import BaseModel, Field, validator
import psutil


class RunMeasurement(BaseModel):

    """What a replay cost and what it simulated.

    `completions` holds the simulated completion time (in seconds) of
    every completed job, in completion order.

    """

    config_id: str
    task_count: int = Field(ge=0)
    machine_count: int = Field(ge=0)
    wall_seconds: float = Field(gt=0)
    simulated_seconds: float = Field(ge=0)
    peak_rss: int = Field(0, ge=0)
    completed: int = Field(0, ge=0)
    rejected: int = Field(0, ge=0)
    failed: int = Field(0, ge=0)
    energy_joules: float | None = None
    meter_period: float | None = None
    completions: list[float] = Field(default_factory=list)

    class Config:

        extra = "forbid"

    @validator("completions")
    def check_order(cls, value):
        if any(later < earlier for earlier, later in zip(value, value[1:])):
            raise ValueError("completions should be in completion order")

        return value


def peak_rss() -> int:
    """Return the peak resident memory of this process, in bytes.

    Platforms that don't report a peak give the current resident size.

    """
    info = psutil.Process(os.getpid()).memory_info()
    return getattr(info, "peak_wset", info.rss)
