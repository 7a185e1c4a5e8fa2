# Copyright (c) 2023, LE GOFF Vincent
# All rights reserved.

# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are met:

# 1. Redistributions of source code must retain the above copyright notice,
#    this list of conditions and the following disclaimer.

# 2. Redistributions in binary form must reproduce the above copyright notice,
#    this list of conditions and the following disclaimer in the documentation
#    and/or other materials provided with the distribution.

# 3. Neither the name of the copyright holder nor the names of its
#    contributors may be used to endorse or promote products derived from
#    this software without specific prior written permission.

# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
# AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
# IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
# ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS
# BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY,
# OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
# SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
# INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
# CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
# ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED
# OF THE POSSIBILITY OF SUCH DAMAGE.

"""The simulation clock.

Time is an integer number of ticks, each tick lasting `tick_seconds`
simulated seconds.  Events are kept in a heap keyed by
(next fire tick, subscription id), which gives a deterministic order
to handlers due at the same tick.

Cancelled and re-armed subscriptions leave stale entries in the heap.
They are skipped when popped, and the heap is rebuilt when they
outnumber the live ones.

Flush hooks are called before time moves forward (at the end of each
fired tick and before every jump).  A hook returns whether it did some
work; hooks are called again until none does.  The sharing kernel and
the IaaS dispatcher use them to settle every change of a tick at once.

```python
clock = SimClock(tick_seconds=0.001)
clock.defer(clock.to_ticks(1.5), lambda: print(clock.current_tick))
clock.simulate_until_last_event()  # prints 1500, returns 1501
```

"""

from heapq import heapify, heappop, heappush
from itertools import count
from typing import Callable

from clock.errors import ClockError, HandlerError, TimeJumpError
from clock.events import DeferredEvent, Subscription
from tools.logging.sim import SimLogger
from tools.settings import settings

logger = SimLogger("clock")
logger.setup()

MAX_FLUSH_ROUNDS = 10_000


class SimClock:

    """A discrete simulation clock."""

    def __init__(self, tick_seconds: float | None = None):
        if tick_seconds is None:
            tick_seconds = settings.TICK_SECONDS

        if tick_seconds <= 0:
            raise ValueError(
                f"tick length must be positive, not {tick_seconds}"
            )

        self.tick_seconds = float(tick_seconds)
        self.current_tick = 0
        self.fired = 0
        self._queue = []
        self._stale = 0
        self._ids = count(1)
        self._flush_hooks = []

    def __repr__(self):
        return f"<SimClock tick={self.current_tick} tau={self.tick_seconds}>"

    @property
    def now_seconds(self) -> float:
        """Current simulated time, in seconds."""
        return self.current_tick * self.tick_seconds

    def to_ticks(self, seconds: float) -> int:
        """Convert a duration in seconds to the nearest number of ticks."""
        if seconds < 0:
            raise ValueError(f"negative duration: {seconds}")

        return round(seconds / self.tick_seconds)

    def to_seconds(self, ticks: int) -> float:
        """Convert a number of ticks to seconds."""
        return ticks * self.tick_seconds

    def subscribe(
        self, handler: Callable[[], object], frequency: int
    ) -> Subscription:
        """Call `handler` every `frequency` ticks.

        Args:
            handler (callable): the handler, called without arguments.
            frequency (int): the number of ticks between two calls.

        Returns:
            subscription (Subscription): the new subscription, first
                    firing at `current_tick + frequency`.

        Raises:
            ValueError: the frequency isn't a positive integer.

        """
        self._check_ticks(frequency, "frequency")
        subscription = Subscription(self, next(self._ids), frequency, handler)
        self._push(subscription)
        return subscription

    def defer(self, delay: int, action: Callable[[], object]) -> DeferredEvent:
        """Call `action` once, `delay` ticks from now.

        Args:
            delay (int): the number of ticks to wait (at least 1).
            action (callable): the action, called without arguments.

        Returns:
            event (DeferredEvent): the event, which can be cancelled.

        Raises:
            ValueError: the delay isn't a positive integer.

        """
        self._check_ticks(delay, "delay")
        event = DeferredEvent(self, next(self._ids), delay, action)
        self._push(event)
        return event

    def unsubscribe(self, subscription: Subscription) -> bool:
        """Cancel a subscription or a deferred event.

        Returns:
            cancelled (bool): whether the subscription was active.

        """
        if not subscription.active:
            return False

        subscription.active = False
        self._mark_stale()
        return True

    cancel = unsubscribe

    def rearm(self, subscription: Subscription, frequency: int) -> int:
        """Change the frequency of an active subscription.

        The next fire becomes `current_tick + frequency`.

        Returns:
            next_fire (int): the tick of the next fire.

        Raises:
            ClockError: the subscription isn't active.
            ValueError: the frequency isn't a positive integer.

        """
        self._check_ticks(frequency, "frequency")
        if not subscription.active:
            raise ClockError(f"cannot rearm inactive {subscription!r}")

        subscription.frequency = frequency
        subscription.generation += 1
        subscription.next_fire = self.current_tick + frequency
        self._mark_stale()
        self._push(subscription, reset=False)
        return subscription.next_fire

    def add_flush_hook(self, hook: Callable[[], bool]) -> None:
        """Add a hook called before time moves forward."""
        self._flush_hooks.append(hook)

    def remove_flush_hook(self, hook: Callable[[], bool]) -> None:
        """Remove a flush hook."""
        if hook in self._flush_hooks:
            self._flush_hooks.remove(hook)

    def flush(self) -> None:
        """Run the flush hooks until none of them has work left."""
        for _ in range(MAX_FLUSH_ROUNDS):
            busy = False
            for hook in tuple(self._flush_hooks):
                if hook():
                    busy = True

            if not busy:
                return

        raise ClockError(
            f"flush hooks still busy after {MAX_FLUSH_ROUNDS} rounds "
            f"at tick {self.current_tick}"
        )

    def next_event(self) -> int | None:
        """Return the tick of the earliest pending event, if any."""
        queue = self._queue
        while queue:
            fire, _, generation, subscription = queue[0]
            if subscription.active and subscription.generation == generation:
                return fire

            heappop(queue)
            self._stale -= 1

        return None

    def fire_tick(self) -> int:
        """Fire every handler due at the current tick, then advance.

        Handlers fire in (next fire, subscription id) order.  Handlers
        subscribed or re-armed while firing are only considered from the
        next tick on.

        Returns:
            fired (int): the number of handlers called.

        Raises:
            HandlerError: a handler raised an exception.  The simulation
                    must not continue after that.

        """
        tick = self.current_tick
        fired = 0
        for subscription in self._pop_due(tick):
            if not subscription.active or subscription.next_fire != tick:
                continue

            if subscription.recurring:
                subscription.generation += 1
                subscription.next_fire = tick + subscription.frequency
                self._push(subscription, reset=False)
            else:
                subscription.active = False
                subscription.fired = True

            fired += 1
            try:
                subscription.handler()
            except Exception as err:
                logger.exception(f"a handler failed at tick {tick}")
                raise HandlerError(tick, subscription.handler, err) from err

        self.flush()
        self.fired += fired
        self.current_tick = tick + 1
        return fired

    def jump_time(self, interval: int) -> None:
        """Move time forward without firing anything.

        Args:
            interval (int): the number of ticks to skip.

        Raises:
            ValueError: the interval is negative.
            TimeJumpError: an event is due before the target tick (the
                    target tick itself is excluded).

        """
        if interval < 0:
            raise ValueError(f"cannot jump back in time ({interval} ticks)")

        self.flush()
        target = self.current_tick + interval
        if (earliest := self.next_event()) is not None and earliest < target:
            raise TimeJumpError(earliest, target)

        self.current_tick = target

    def simulate_until_last_event(self, max_tick: int | None = None) -> int:
        """Fire events until none is left.

        Args:
            max_tick (int, optional): stop with an error if an event is
                    due after this tick.  Recurring subscriptions never
                    empty the queue, so long runs should set a budget.

        Returns:
            tick (int): the current tick, one after the last fire.

        """
        while True:
            self.flush()
            if (earliest := self.next_event()) is None:
                return self.current_tick

            if max_tick is not None and earliest > max_tick:
                raise ClockError(
                    f"tick budget exhausted: next event at tick {earliest} "
                    f"is beyond {max_tick}"
                )

            if earliest > self.current_tick:
                self.current_tick = earliest

            self.fire_tick()

    def simulate_until(self, target: int, drop: bool = False) -> None:
        """Fire every event due before `target`, then move to `target`.

        Args:
            target (int): the tick to reach.  Events due at this very
                    tick are not fired.
            drop (bool, optional): discard due events instead of firing
                    them.  Recurring subscriptions skip their occurrence,
                    deferred events are cancelled.

        Raises:
            ValueError: the target is in the past.

        """
        if target < self.current_tick:
            raise ValueError(
                f"cannot simulate until tick {target}, "
                f"already at tick {self.current_tick}"
            )

        while True:
            self.flush()
            earliest = self.next_event()
            if earliest is None or earliest >= target:
                break

            if earliest > self.current_tick:
                self.current_tick = earliest

            if drop:
                self._drop_tick()
            else:
                self.fire_tick()

        self.current_tick = target

    def _drop_tick(self) -> None:
        """Discard the events due at the current tick."""
        tick = self.current_tick
        for subscription in self._pop_due(tick):
            if not subscription.active or subscription.next_fire != tick:
                continue

            if subscription.recurring:
                subscription.generation += 1
                subscription.next_fire = tick + subscription.frequency
                self._push(subscription, reset=False)
            else:
                subscription.active = False

        logger.debug(f"dropped the events of tick {tick}")
        self.current_tick = tick + 1

    def _pop_due(self, tick: int) -> list[Subscription]:
        due = []
        queue = self._queue
        while queue and queue[0][0] <= tick:
            _, _, generation, subscription = heappop(queue)
            if subscription.active and subscription.generation == generation:
                due.append(subscription)
            else:
                self._stale -= 1

        return due

    def _push(self, subscription: Subscription, reset: bool = True) -> None:
        if reset:
            subscription.generation = 0

        heappush(
            self._queue,
            (
                subscription.next_fire,
                subscription.id,
                subscription.generation,
                subscription,
            ),
        )

    def _mark_stale(self) -> None:
        self._stale += 1
        if self._stale > 64 and self._stale * 2 > len(self._queue):
            self._queue = [
                entry
                for entry in self._queue
                if entry[3].active and entry[3].generation == entry[2]
            ]
            heapify(self._queue)
            self._stale = 0

    @staticmethod
    def _check_ticks(value: int, name: str) -> None:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"{name} must be an integer number of ticks")

        if value < 1:
            raise ValueError(f"{name} must be at least 1 tick, not {value}")
