"""Synthetic traces.

Jobs come in bursts of at most `max_parallel` jobs.  The jobs of a
burst are submitted within `spread` seconds of its start; the next
burst starts once every job of the burst could have completed, even
one after the other, so bursts never overlap.

```python
spec = SyntheticSpec(task_count=100, max_parallel=10, spread=10,
                     length_range=(10, 90), seed=1)
trace = generate_trace(spec)
```

"""

import numpy as np
from pydantic import BaseModel, Field, validator

from harness.trace import Trace, TraceJob

# Pause between two bursts, on top of the time their jobs need.
BURST_GAP = 1.0


class SyntheticSpec(BaseModel):

    """Parameters of a synthetic trace."""

    task_count: int = Field(gt=0)
    max_parallel: int = Field(gt=0)
    spread: float = Field(0.0, ge=0)
    length_range: tuple[float, float] = (10.0, 90.0)
    cores: int = Field(1, gt=0)
    seed: int = 0

    class Config:

        extra = "forbid"

    @validator("length_range")
    def check_range(cls, value):
        low, high = value
        if not 0 < low <= high:
            raise ValueError(
                f"length range needs 0 < min <= max, got {low}-{high}"
            )

        return value


def generate_trace(spec: SyntheticSpec) -> Trace:
    """Generate a trace; the same spec always gives the same trace."""
    rng = np.random.default_rng(spec.seed)
    low, high = spec.length_range
    jobs = []
    base = 0.0
    left = spec.task_count
    while left:
        size = min(spec.max_parallel, left)
        starts = np.sort(base + rng.uniform(0, spec.spread, size))
        lengths = rng.uniform(low, high, size)
        for start, length in zip(starts, lengths):
            jobs.append(
                TraceJob(
                    str(len(jobs) + 1),
                    round(float(start), 3),
                    max(round(float(length), 3), 0.001),
                    spec.cores,
                )
            )

        left -= size
        base = float(starts[-1] + lengths.sum()) + BURST_GAP
        base = round(base, 3)

    return Trace(jobs, source=f"synthetic(seed={spec.seed})")
