"""Max-min fair sharing, computed by progressive filling."""

from typing import Sequence, TYPE_CHECKING

from sharing.logic.abc import SchedulingLogic

if TYPE_CHECKING:
    from sharing.consumption import ResourceConsumption

EPSILON = 1e-12


class MaxMinFairness(SchedulingLogic):

    """Max-min fairness over the whole influence group.

    All unfrozen consumptions are raised at the same pace.  A
    consumption freezes when it reaches its limit or when one of its
    spreaders runs out of capacity.  The loop ends when every
    consumption is frozen, after at most one round per consumption
    and spreader.

    """

    name = "max-min"

    def assign(self, consumptions: Sequence["ResourceConsumption"]) -> None:
        rates = {}
        residual = {}
        users = {}
        unfrozen = []
        for consumption in consumptions:
            ends = (consumption.provider, consumption.consumer)
            rates[consumption.id] = 0.0
            if any(end.capacity <= 0 for end in ends):
                continue

            unfrozen.append(consumption)
            for end in ends:
                residual.setdefault(end, end.capacity)
                users[end] = users.get(end, 0) + 1

        while unfrozen:
            step = min(
                residual[end] / used for end, used in users.items() if used
            )
            step = min(
                step,
                min(
                    consumption.limit - rates[consumption.id]
                    for consumption in unfrozen
                ),
            )
            step = max(step, 0.0)
            for consumption in unfrozen:
                rates[consumption.id] += step

            saturated = set()
            for end, used in users.items():
                if used:
                    residual[end] -= step * used
                    if residual[end] <= EPSILON * end.capacity:
                        residual[end] = 0.0
                        saturated.add(end)

            still = []
            for consumption in unfrozen:
                rate = rates[consumption.id]
                if (
                    rate >= consumption.limit * (1 - EPSILON)
                    or consumption.provider in saturated
                    or consumption.consumer in saturated
                ):
                    users[consumption.provider] -= 1
                    users[consumption.consumer] -= 1
                else:
                    still.append(consumption)

            unfrozen = still

        for consumption in consumptions:
            rate = rates[consumption.id]
            consumption.provider_share = rate
            consumption.consumer_share = rate
