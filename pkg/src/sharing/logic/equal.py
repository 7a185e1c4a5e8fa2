"""Naive equal split, ignoring bottlenecks elsewhere in the group."""

from typing import Sequence, TYPE_CHECKING

from sharing.logic.abc import SchedulingLogic

if TYPE_CHECKING:
    from sharing.consumption import ResourceConsumption


class EqualSplit(SchedulingLogic):

    """Each spreader splits its capacity among its own consumptions.

    Consumptions whose limit is below the equal share get their limit
    and the rest is split among the others.  Each side decides alone,
    so a consumption may be given different shares by its provider and
    its consumer: the surplus of the provider then builds up as
    backlog (`under`).  This is an approximation: it is only exact for
    groups with a single bottleneck.

    """

    name = "equal-split"

    def assign(self, consumptions: Sequence["ResourceConsumption"]) -> None:
        local = {}
        for consumption in consumptions:
            for end in (consumption.provider, consumption.consumer):
                local.setdefault(end, []).append(consumption)

        shares = {}
        for end, mine in local.items():
            shares[end] = split(end.capacity, mine)

        for consumption in consumptions:
            consumption.provider_share = shares[consumption.provider][
                consumption.id
            ]
            consumption.consumer_share = shares[consumption.consumer][
                consumption.id
            ]


def split(
    capacity: float, consumptions: Sequence["ResourceConsumption"]
) -> dict[int, float]:
    """Split a capacity equally, capping each share by its limit.

    Args:
        capacity (float): the capacity to split.
        consumptions (sequence): the consumptions sharing it.

    Returns:
        shares (dict): consumption id to share.

    """
    shares = {}
    left = max(capacity, 0.0)
    ordered = sorted(consumptions, key=lambda c: (c.limit, c.id))
    for index, consumption in enumerate(ordered):
        fair = left / (len(ordered) - index)
        share = min(consumption.limit, fair)
        shares[consumption.id] = share
        left -= share

    return shares
