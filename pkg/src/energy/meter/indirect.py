"""Indirect meters, sampling the state of the system."""

from dataclasses import dataclass
from typing import Callable, TYPE_CHECKING

from energy.meter.abc import EnergyMeter

if TYPE_CHECKING:
    from clock import SimClock


class IndirectMeter(EnergyMeter):

    """Meter asking a sampler for the power draw.

    The sampler is called with the current tick at each sample and
    returns the average power of the window, in watts.  It must not
    change the simulation.

    """

    def __init__(
        self,
        clock: "SimClock",
        sampler: Callable[[int], float],
        name: str | None = None,
    ):
        super().__init__(clock, name)
        self.sampler = sampler

    def energy_since_sample(self, elapsed: int) -> float:
        watts = self.sampler(self.clock.current_tick)
        return watts * elapsed * self.clock.tick_seconds


@dataclass(frozen=True)
class ConstantSampler:

    """A sampler returning a constant draw.

    Stands in for facility equipment (air conditioning, for
    instance) that has no model of its own.

    """

    watts: float

    def __call__(self, tick: int) -> float:
        return self.watts
