"""Resource consumptions.

A consumption is a piece of work flowing from a provider spreader to a
consumer spreader: `remaining` units still have to be produced by the
provider, `under` units were produced but not yet consumed, and no more
than `limit` units can progress in a tick.

Every tick, the provider side is evaluated first, then the consumer side:

    produced = min(remaining, min(provider_share, limit))
    under += produced; remaining -= produced
    consumed = min(under, min(consumer_share, limit))
    under -= consumed

The kernel doesn't loop tick by tick: `advance` applies the same rules
to a whole interval at once, since shares only change at events.

"""

from enum import Enum
from itertools import count
import math
from typing import Callable, TYPE_CHECKING

from sharing.errors import InvariantError
from tools.settings import settings

if TYPE_CHECKING:
    from sharing.spreader import ResourceSpreader


class ConsumptionState(Enum):

    """State of a consumption."""

    NEW = "new"
    REGISTERED = "registered"
    SUSPENDED = "suspended"
    COMPLETED = "completed"
    CANCELLED = "cancelled"


class ResourceConsumption:

    """A unit of work between a provider and a consumer."""

    _ids = count(1)

    def __init__(
        self,
        total: float,
        limit: float,
        on_done: Callable[["ResourceConsumption"], object] | None = None,
        tolerance: float | None = None,
    ):
        if not total > 0:
            raise ValueError(
                f"a consumption needs positive work, not {total}"
            )

        if not limit > 0:
            raise ValueError(
                f"a consumption needs a positive limit, not {limit}"
            )

        if tolerance is None:
            tolerance = settings.COMPLETION_TOLERANCE

        self.id = next(type(self)._ids)
        self.initial = float(total)
        self.remaining = float(total)
        self.under = 0.0
        self.limit = float(limit)
        self.consumed = 0.0
        self.on_done = on_done
        self.state = ConsumptionState.NEW
        self.provider: "ResourceSpreader | None" = None
        self.consumer: "ResourceSpreader | None" = None
        self.provider_share: float | None = None
        self.consumer_share: float | None = None
        self.threshold = tolerance * self.initial

    def __repr__(self):
        return (
            f"<Consumption #{self.id} {self.state.value} "
            f"<{self.under:g}, {self.remaining:g}, {self.limit:g}>>"
        )

    @property
    def registered(self) -> bool:
        return self.state is ConsumptionState.REGISTERED

    @property
    def cancelled(self) -> bool:
        return self.state is ConsumptionState.CANCELLED

    @property
    def completed(self) -> bool:
        return self.state is ConsumptionState.COMPLETED

    @property
    def finished(self) -> bool:
        """Whether no work is left, within the completion tolerance."""
        return self.under + self.remaining < self.threshold

    def provider_step(self) -> float:
        """Apply one tick of production and return `under`."""
        if self.provider_share is None:
            raise InvariantError(f"no provider share assigned to {self!r}")

        produced = min(self.remaining, min(self.provider_share, self.limit))
        self.under += produced
        self.remaining -= produced
        if self.provider is not None:
            self.provider.processed += produced

        return self.under

    def consumer_step(self) -> float:
        """Apply one tick of consumption and return `under`."""
        if self.consumer_share is None:
            raise InvariantError(f"no consumer share assigned to {self!r}")

        consumed = min(self.under, min(self.consumer_share, self.limit))
        self.under -= consumed
        self.consumed += consumed
        if self.consumer is not None:
            self.consumer.processed += consumed

        return self.under

    def advance(self, ticks: int) -> None:
        """Progress the consumption for `ticks` ticks at current shares.

        The result is the same as calling `provider_step` then
        `consumer_step` `ticks` times, up to floating-point rounding.

        """
        if ticks <= 0:
            return

        production, consumption = self._rates()
        produced_total = consumed_total = 0.0
        left = ticks
        while left > 0:
            if self.remaining > self.threshold and production > 0:
                full = min(left, math.floor(self.remaining / production))
                if full > 0:
                    produced = production * full
                    under = max(
                        0.0, self.under + (production - consumption) * full
                    )
                    consumed = self.under + produced - under
                    self.remaining -= produced
                    if self.remaining <= self.threshold:
                        under += self.remaining
                        produced += self.remaining
                        self.remaining = 0.0

                    self.under = under
                    left -= full
                else:
                    produced = self.remaining
                    available = self.under + produced
                    consumed = min(available, consumption)
                    self.remaining = 0.0
                    self.under = available - consumed
                    left -= 1
            elif self.under > self.threshold and consumption > 0:
                needed = max(1, _ceil(self.under / consumption))
                spent = min(left, needed)
                produced = 0.0
                consumed = min(self.under, consumption * spent)
                self.under -= consumed
                left -= spent
            else:
                break

            produced_total += produced
            consumed_total += consumed

        self.consumed += consumed_total
        if self.provider is not None:
            self.provider.processed += produced_total

        if self.consumer is not None:
            self.consumer.processed += consumed_total

    def ticks_to_complete(self) -> int | None:
        """Return the number of ticks before completion at current shares.

        Returns:
            ticks (int or None): the number of ticks, `None` if the
                    consumption can't progress (a zero share somewhere).

        """
        if self.finished:
            return 0

        production, consumption = self._rates()
        if consumption <= 0:
            return None

        remaining, under, ticks = self.remaining, self.under, 0
        if remaining > self.threshold:
            if production <= 0:
                return None

            full = math.floor(remaining / production)
            left = remaining - production * full
            under = max(0.0, under + (production - consumption) * full)
            ticks += full
            if left > self.threshold:
                available = under + left
                under = available - min(available, consumption)
                ticks += 1
            else:
                under += max(left, 0.0)

        if under > self.threshold:
            ticks += _ceil(under / consumption)

        return max(ticks, 1)

    def finish(self) -> None:
        """Mark as completed, absorbing what the tolerance leaves."""
        self.consumed += self.under + self.remaining
        self.under = self.remaining = 0.0
        self.state = ConsumptionState.COMPLETED

    def _rates(self) -> tuple[float, float]:
        if self.provider_share is None or self.consumer_share is None:
            raise InvariantError(f"no share assigned to {self!r}")

        return (
            min(self.provider_share, self.limit),
            min(self.consumer_share, self.limit),
        )


def _ceil(value: float) -> int:
    """Ceil tolerating floating-point noise just above an integer."""
    nearest = round(value)
    if abs(value - nearest) <= 1e-9 * max(1.0, abs(value)):
        return int(nearest)

    return math.ceil(value)
