"""Subscriptions and deferred events."""

from typing import Callable, TYPE_CHECKING

if TYPE_CHECKING:
    from clock.base import SimClock


class Subscription:

    """A recurring subscription to the clock.

    The handler is called without arguments every `frequency` ticks,
    until the subscription is cancelled.  The clock's `current_tick`
    gives the firing tick.

    """

    __slots__ = (
        "id",
        "clock",
        "frequency",
        "next_fire",
        "handler",
        "active",
        "generation",
    )

    recurring = True

    def __init__(
        self,
        clock: "SimClock",
        id: int,
        frequency: int,
        handler: Callable[[], object],
    ):
        self.clock = clock
        self.id = id
        self.frequency = frequency
        self.next_fire = clock.current_tick + frequency
        self.handler = handler
        self.active = True
        self.generation = 0

    def __repr__(self):
        state = "active" if self.active else "inactive"
        return (
            f"<{type(self).__name__} #{self.id} every {self.frequency} "
            f"next={self.next_fire} {state}>"
        )

    def cancel(self) -> bool:
        """Cancel the subscription, return whether it was active."""
        return self.clock.unsubscribe(self)

    def rearm(self, frequency: int) -> int:
        """Change the frequency, counting from the current tick."""
        return self.clock.rearm(self, frequency)


class DeferredEvent(Subscription):

    """A one-shot event, firing once unless cancelled."""

    __slots__ = ("fired",)

    recurring = False

    def __init__(self, clock, id, delay, action):
        super().__init__(clock, id, delay, action)
        self.fired = False

    @property
    def fire_at(self) -> int:
        return self.next_fire

    @property
    def action(self) -> Callable[[], object]:
        return self.handler

    @property
    def cancelled(self) -> bool:
        return not self.active and not self.fired

    def __repr__(self):
        if self.fired:
            state = "fired"
        elif self.active:
            state = "pending"
        else:
            state = "cancelled"

        return f"<DeferredEvent #{self.id} at {self.next_fire} {state}>"
