"""Influence groups.

An influence group is a set of spreaders linked, directly or through
other spreaders, by registered consumptions.  Shares are computed for a
whole group at once: nothing outside of it can change them.

The kernel maintains groups incrementally (see
`SharingKernel.update_groups`); `direct_group` recomputes a group from
scratch and is both the reference for tests and the tool the kernel
uses to split groups.

"""

from itertools import count
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from clock import Subscription
    from sharing.consumption import ResourceConsumption
    from sharing.spreader import ResourceSpreader


class InfluenceGroup:

    """A maintained influence group."""

    _ids = count(1)

    def __init__(self, members: set["ResourceSpreader"], last_update: int):
        self.id = next(type(self)._ids)
        self.members = set(members)
        self.last_update = last_update
        self.subscription: "Subscription | None" = None
        self.alive = True
        for member in self.members:
            member.group = self

    def __repr__(self):
        names = ", ".join(sorted(member.name for member in self.members))
        return f"<InfluenceGroup #{self.id} {{{names}}}>"

    @property
    def dirty(self) -> bool:
        """Whether a member gained or lost consumptions."""
        return any(member.added or member.lost for member in self.members)

    def consumptions(self) -> list["ResourceConsumption"]:
        """Return the registered consumptions of the group, by id."""
        consumptions = [
            consumption
            for member in self.members
            if member.is_provider
            for consumption in member.consumptions.values()
        ]
        consumptions.sort(key=lambda consumption: consumption.id)
        return consumptions

    def sorted_members(self) -> list["ResourceSpreader"]:
        """Return members ordered by spreader id."""
        return sorted(self.members, key=lambda member: member.id)

    def drop_subscription(self) -> None:
        """Cancel the clock subscription of this group, if any."""
        if (subscription := self.subscription) is not None:
            subscription.cancel()
            self.subscription = None


def direct_group(spreader: "ResourceSpreader") -> set["ResourceSpreader"]:
    """Return every spreader linked to this one by consumptions.

    This is a breadth-first closure over the current consumption graph,
    independent of maintained groups.

    Args:
        spreader (ResourceSpreader): the starting spreader.

    Returns:
        members (set): the spreader and all spreaders reachable from it.

    """
    members = {spreader}
    frontier = [spreader]
    while frontier:
        current = frontier.pop()
        for consumption in current.consumptions.values():
            for other in (consumption.provider, consumption.consumer):
                if other not in members:
                    members.add(other)
                    frontier.append(other)

    return members
