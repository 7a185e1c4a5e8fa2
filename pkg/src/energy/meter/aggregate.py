"""Aggregate meters, combining other meters."""

from typing import Callable, Iterable, TYPE_CHECKING

from energy.errors import MeterError
from energy.meter.abc import EnergyMeter

if TYPE_CHECKING:
    from clock import SimClock


class AggregateMeter(EnergyMeter):

    """Meter combining the totals of several meters.

    The children are started and stopped with the aggregate.  Reading
    the aggregate applies its aggregation function (a sum by default)
    to the totals of the children.  Children may not depend on each
    other: the energy would be counted twice.

    """

    def __init__(
        self,
        clock: "SimClock",
        children: Iterable[EnergyMeter],
        aggregation: Callable[[list[float]], float] = sum,
        name: str | None = None,
    ):
        super().__init__(clock, name)
        self.children = list(children)
        self.aggregation = aggregation
        for index, child in enumerate(self.children):
            for other in self.children[index + 1:]:
                if (
                    other is child
                    or other in child.dependencies()
                    or child in other.dependencies()
                ):
                    raise MeterError(
                        f"{child.name} and {other.name} depend on each "
                        "other and can't be aggregated"
                    )

    def depends_on(self) -> set[EnergyMeter]:
        return set(self.children)

    def begin(self) -> None:
        for child in self.children:
            child.start(self.period)

    def end(self) -> None:
        for child in self.children:
            child.stop()

    def sample(self) -> None:
        now = self.clock.current_tick
        elapsed = now - self.last_sample_tick
        if elapsed <= 0:
            return

        before = self.read()
        for child in self.children:
            child.sample()

        self.last_sample_tick = now
        watts = (self.read() - before) / (elapsed * self.clock.tick_seconds)
        self.publish(watts)

    def read(self) -> float:
        return self.aggregation([child.read() for child in self.children])

    def energy_since_sample(self, elapsed: int) -> float:
        return 0.0
