"""Base class of energy meters."""

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass
from itertools import count
from typing import Callable, TYPE_CHECKING

from energy.errors import MeterError
from tools.settings import settings

if TYPE_CHECKING:
    from clock import SimClock, Subscription


@dataclass(frozen=True)
class MeterReading:

    """A reading, sent to the listeners of a meter at each sample."""

    meter: str
    tick: int
    watts: float
    joules: float


class EnergyMeter(metaclass=ABCMeta):

    """A meter accumulating joules while running.

    A running meter samples every `period` ticks: it asks its subclass
    for the energy spent since the last sample and adds it to
    `accumulated`.  Stopping takes a last sample for the partial window,
    after which the total doesn't change until the meter is started
    again.

    """

    _ids = count(1)

    def __init__(self, clock: "SimClock", name: str | None = None):
        self.id = next(type(self)._ids)
        self.name = name or f"{type(self).__name__.lower()}-{self.id}"
        self.clock = clock
        self.period: int | None = None
        self.accumulated = 0.0
        self.running = False
        self.last_sample_tick: int | None = None
        self.subscription: "Subscription | None" = None
        self.listeners: list[Callable[[MeterReading], object]] = []

    def __repr__(self):
        state = "running" if self.running else "stopped"
        return f"<{type(self).__name__} {self.name} {state}>"

    def depends_on(self) -> set["EnergyMeter"]:
        """Return the meters this meter reads from."""
        return set()

    def dependencies(self) -> set["EnergyMeter"]:
        """Return every meter this one depends on, transitively."""
        found = set()
        frontier = list(self.depends_on())
        while frontier:
            meter = frontier.pop()
            if meter not in found:
                found.add(meter)
                frontier.extend(meter.depends_on())

        return found

    def start(self, period: int | None = None) -> bool:
        """Start sampling every `period` ticks.

        Args:
            period (int, optional): ticks between samples.  By default,
                    the configured metering period.

        Returns:
            started (bool): `False` if the meter was already running.

        """
        if self.running:
            return False

        if period is None:
            period = self.clock.to_ticks(settings.METER_PERIOD_SECONDS)

        if period < 1:
            raise ValueError("metering period must be at least 1 tick")

        self.period = period
        self.running = True
        self.last_sample_tick = self.clock.current_tick
        self.begin()
        self.subscription = self.clock.subscribe(self.sample, period)
        return True

    def stop(self) -> bool:
        """Take a last sample and stop.

        Returns:
            stopped (bool): `False` if the meter wasn't running.

        """
        if not self.running:
            return False

        self.sample()
        self.subscription.cancel()
        self.subscription = None
        self.running = False
        self.end()
        return True

    def sample(self) -> None:
        """Accumulate the energy spent since the last sample."""
        now = self.clock.current_tick
        elapsed = now - self.last_sample_tick
        if elapsed <= 0:
            return

        joules = self.energy_since_sample(elapsed)
        if joules < 0:
            raise MeterError(f"{self!r} measured negative energy")

        self.accumulated += joules
        self.last_sample_tick = now
        self.publish(joules / (elapsed * self.clock.tick_seconds))

    def publish(self, watts: float) -> None:
        """Send a reading to the listeners."""
        if self.listeners:
            reading = MeterReading(
                self.name, self.clock.current_tick, watts, self.read()
            )
            for listener in self.listeners:
                listener(reading)

    def read(self) -> float:
        """Return the accumulated joules."""
        return self.accumulated

    def begin(self) -> None:
        """Prepare a new sampling session."""

    def end(self) -> None:
        """Clean up after a sampling session."""

    @abstractmethod
    def energy_since_sample(self, elapsed: int) -> float:
        """Return the joules spent over the `elapsed` last ticks."""
