"""Utilisation of spreaders, from their counters."""

from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from sharing.spreader import ResourceSpreader


@dataclass(frozen=True)
class CounterMark:

    """A snapshot of the counters of a spreader."""

    tick: int
    processed: float
    capacity_ticks: float


def mark(spreader: "ResourceSpreader") -> CounterMark:
    """Settle a spreader and snapshot its counters."""
    spreader.settle()
    return CounterMark(
        spreader.kernel.clock.current_tick,
        spreader.processed,
        spreader.capacity_ticks,
    )


def utilisation(spreader: "ResourceSpreader", since: CounterMark) -> float:
    """Return the average utilisation of a spreader since a mark.

    The utilisation is the processed amount divided by the capacity
    available over the window (the processing factor of power states
    included).  A window without capacity has a zero utilisation.

    Args:
        spreader (ResourceSpreader): the spreader.
        since (CounterMark): the mark opening the window.

    Returns:
        utilisation (float): between 0 and 1.

    Raises:
        ValueError: the mark is in the future.

    """
    now = mark(spreader)
    if since.tick > now.tick:
        raise ValueError(f"mark at tick {since.tick} is in the future")

    capacity = now.capacity_ticks - since.capacity_ticks
    if capacity <= 0:
        return 0.0

    value = (now.processed - since.processed) / capacity
    return min(max(value, 0.0), 1.0)
