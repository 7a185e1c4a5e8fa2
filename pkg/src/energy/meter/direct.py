"""Direct meters, reading the counters of a spreader."""

from typing import TYPE_CHECKING

from energy.errors import MeterError
from energy.meter.abc import EnergyMeter
from energy.utilisation import mark, utilisation

if TYPE_CHECKING:
    from sharing.spreader import ResourceSpreader


class DirectMeter(EnergyMeter):

    """Meter of a single spreader, using its power state.

    The power of a window is the model of the spreader's power state
    applied to the average utilisation of the window.  When the power
    state changes, the part of the window already elapsed is charged
    to the old state.

    """

    def __init__(self, spreader: "ResourceSpreader", name: str | None = None):
        super().__init__(spreader.kernel.clock, name or f"{spreader.name}")
        self.spreader = spreader
        self._mark = None
        self._pending = 0.0

    def begin(self) -> None:
        self._mark = mark(self.spreader)
        self._pending = 0.0
        self.spreader.state_listeners.append(self._checkpoint)

    def end(self) -> None:
        if self._checkpoint in self.spreader.state_listeners:
            self.spreader.state_listeners.remove(self._checkpoint)

    def energy_since_sample(self, elapsed: int) -> float:
        joules = self._pending + self._segment()
        self._pending = 0.0
        return joules

    def _checkpoint(self, spreader: "ResourceSpreader") -> None:
        if self.running:
            self._pending += self._segment()

    def _segment(self) -> float:
        """Charge the segment since the last mark to the current state."""
        since = self._mark
        ticks = self.clock.current_tick - since.tick
        if ticks <= 0:
            return 0.0

        if (state := self.spreader.power_state) is None:
            raise MeterError(f"{self.spreader!r} has no power state")

        usage = utilisation(self.spreader, since)
        self._mark = mark(self.spreader)
        watts = state.model.power(usage)
        return watts * ticks * self.clock.tick_seconds
