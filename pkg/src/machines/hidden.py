"""The hidden consumer of physical machines."""

from functools import partial
from typing import Callable, Sequence, TYPE_CHECKING

from machines.profiles import ScriptStep
from sharing.consumption import ResourceConsumption

if TYPE_CHECKING:
    from clock import DeferredEvent
    from machines.physical import PhysicalMachine


class HiddenScript:

    """Run a script of tasks on the hidden consumer of a machine.

    Tasks are registered one after the other, each `delay` seconds
    after the previous one completed, between the CPU of the machine
    and its hidden consumer.  They compete with everything else the
    machine runs.  `on_done` is called once the last task completes.

    A repeating script starts over after its last task and never calls
    `on_done`: it runs until cancelled.

    """

    def __init__(
        self,
        pm: "PhysicalMachine",
        steps: Sequence[ScriptStep],
        on_done: Callable[[], object] | None = None,
        repeat: bool = False,
    ):
        self.pm = pm
        self.steps = tuple(steps)
        self.on_done = on_done
        self.repeat = repeat
        self.index = -1
        self.current: ResourceConsumption | None = None
        self.pending: "DeferredEvent | None" = None
        self.cancelled = False

    def __repr__(self):
        return (
            f"<HiddenScript on {self.pm.name} "
            f"step {self.index + 1}/{len(self.steps)}>"
        )

    def start(self) -> None:
        if not self.steps:
            self._finish()
        else:
            self._schedule(0)

    def cancel(self) -> None:
        """Stop the script without calling `on_done`."""
        self.cancelled = True
        if self.pending is not None:
            self.pending.cancel()
            self.pending = None

        if self.current is not None:
            self.pm.kernel.cancel(self.current)
            self.current = None

    def _schedule(self, index: int) -> None:
        clock = self.pm.clock
        if (delay := clock.to_ticks(self.steps[index].delay)) > 0:
            self.pending = clock.defer(delay, partial(self._register, index))
        else:
            self._register(index)

    def _register(self, index: int) -> None:
        self.pending = None
        self.index = index
        step = self.steps[index]
        pm = self.pm
        per_tick = pm.cpu_provider.per_tick_processing
        per_second = per_tick / pm.clock.tick_seconds
        self.current = ResourceConsumption(
            step.total * per_second,
            step.limit * per_tick,
            partial(self._completed, index),
        )
        pm.kernel.register(self.current, pm.cpu_provider, pm.hidden_consumer)

    def _completed(self, index: int, consumption: ResourceConsumption):
        if self.cancelled or consumption.cancelled:
            return

        self.current = None
        if index + 1 < len(self.steps):
            self._schedule(index + 1)
        elif self.repeat:
            self._schedule(0)
        else:
            self._finish()

    def _finish(self) -> None:
        if self.on_done is not None:
            self.on_done()
