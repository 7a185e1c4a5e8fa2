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

"""The sharing kernel.

The kernel owns every spreader and consumption of a simulation and
decides how much each consumption progresses in each tick.  Its cycle,
for one influence group:

1. A consumption is registered (or cancelled, or a spreader changes
   capacity).  The groups involved are first brought up to date with
   the shares they had until now (`settle`), then marked dirty.
2. Before time moves on, the clock calls `flush`: dirty groups are
   merged or split (`update_groups`), their shares assigned by the
   scheduling logic, and the group's clock subscription re-armed for
   the earliest completion.
3. When the subscription fires (`group_tick`), the group is settled:
   every consumption progresses over the elapsed interval, finished
   ones are removed and their handlers called, in consumption id order.
   The group is then rescheduled at the next flush.

Consumptions progress only at these points: between them, shares are
constant and `ResourceConsumption.advance` computes the whole interval
at once.

"""

from functools import partial
from typing import Callable, TYPE_CHECKING

from sharing.consumption import ConsumptionState, ResourceConsumption
from sharing.errors import RegistrationError
from sharing.group import InfluenceGroup, direct_group
from sharing.logic import MaxMinFairness, SchedulingLogic
from sharing.spreader import ResourceSpreader, Role
from tools.logging.sim import SimLogger

if TYPE_CHECKING:
    from clock import SimClock

logger = SimLogger("sharing")
logger.setup()


class SharingKernel:

    """Kernel sharing capacity between consumptions."""

    def __init__(
        self,
        clock: "SimClock",
        logic: SchedulingLogic | None = None,
        debug_shares: bool = False,
    ):
        self.clock = clock
        self.logic = logic if logic is not None else MaxMinFairness()
        self.debug_shares = debug_shares
        self.share_log: list[tuple[int, int, int, float, float]] = []
        self._dirty: dict[int, ResourceSpreader] = {}
        self._stale: dict[int, InfluenceGroup] = {}
        clock.add_flush_hook(self.flush)

    def __repr__(self):
        return f"<SharingKernel {self.logic.name}>"

    def spreader(
        self, role: Role | str, per_tick_processing: float, name: str = ""
    ) -> ResourceSpreader:
        """Create a spreader managed by this kernel."""
        spreader = ResourceSpreader(
            self, Role(role), per_tick_processing, name
        )
        InfluenceGroup({spreader}, self.clock.current_tick)
        return spreader

    def provider(self, per_tick: float, name: str = "") -> ResourceSpreader:
        """Create a provider spreader."""
        return self.spreader(Role.PROVIDER, per_tick, name)

    def consumer(self, per_tick: float, name: str = "") -> ResourceSpreader:
        """Create a consumer spreader."""
        return self.spreader(Role.CONSUMER, per_tick, name)

    @staticmethod
    def create_consumption(
        total: float,
        limit: float,
        on_done: Callable[[ResourceConsumption], object] | None = None,
    ) -> ResourceConsumption:
        """Create an unregistered consumption of `total` units.

        Raises:
            ValueError: the total or the limit isn't positive.

        """
        return ResourceConsumption(total, limit, on_done)

    def register(
        self,
        consumption: ResourceConsumption,
        provider: ResourceSpreader,
        consumer: ResourceSpreader,
    ) -> ResourceConsumption:
        """Register a consumption between a provider and a consumer.

        New and suspended consumptions can be registered.  The
        consumption starts progressing in the current tick, with the
        shares assigned when the tick is flushed.

        Raises:
            RegistrationError: the consumption is registered, finished
                    or cancelled, or a spreader has the wrong role.

        """
        if consumption.state not in (
            ConsumptionState.NEW,
            ConsumptionState.SUSPENDED,
        ):
            raise RegistrationError(
                f"cannot register {consumption!r}: it is "
                f"{consumption.state.value}"
            )

        if provider.role is not Role.PROVIDER:
            raise RegistrationError(f"{provider!r} isn't a provider")

        if consumer.role is not Role.CONSUMER:
            raise RegistrationError(f"{consumer!r} isn't a consumer")

        for spreader in (provider, consumer):
            if spreader.kernel is not self:
                raise RegistrationError(
                    f"{spreader!r} belongs to another kernel"
                )

        finished = self._settle(provider.group)
        if consumer.group is not provider.group:
            finished += self._settle(consumer.group)

        consumption.provider = provider
        consumption.consumer = consumer
        consumption.provider_share = consumption.consumer_share = None
        consumption.state = ConsumptionState.REGISTERED
        for spreader in (provider, consumer):
            spreader.consumptions[consumption.id] = consumption
            spreader.added.append(consumption)
            self._dirty[spreader.id] = spreader

        self._notify(finished)
        return consumption

    def cancel(self, consumption: ResourceConsumption) -> None:
        """Cancel a consumption, calling its handler.

        Cancelling a finished or already cancelled consumption does
        nothing.  The work left is kept for inspection.

        """
        match consumption.state:
            case ConsumptionState.COMPLETED | ConsumptionState.CANCELLED:
                return
            case ConsumptionState.REGISTERED:
                finished = self._settle(consumption.provider.group)
                if consumption.state is ConsumptionState.REGISTERED:
                    self._detach(consumption)
                    consumption.state = ConsumptionState.CANCELLED
                    finished.append(consumption)

                self._notify(finished)
            case _:
                consumption.state = ConsumptionState.CANCELLED
                self._notify([consumption])

    def suspend(self, consumption: ResourceConsumption) -> bool:
        """Deregister a consumption, keeping its remaining work.

        The backlog produced but not consumed is folded back into the
        remaining work, so that nothing is lost when the consumption is
        registered again, possibly between other spreaders.

        Returns:
            suspended (bool): whether the consumption was registered
                    and still had work to do.

        """
        if consumption.state is not ConsumptionState.REGISTERED:
            return False

        finished = self._settle(consumption.provider.group)
        suspended = consumption.state is ConsumptionState.REGISTERED
        if suspended:
            self._detach(consumption)
            consumption.remaining += consumption.under
            consumption.under = 0.0
            consumption.state = ConsumptionState.SUSPENDED

        self._notify(finished)
        return suspended

    def move(
        self,
        consumption: ResourceConsumption,
        provider: ResourceSpreader,
        consumer: ResourceSpreader,
    ) -> bool:
        """Deregister a consumption and register it elsewhere.

        Returns:
            moved (bool): whether the consumption still had work and
                    was moved.

        """
        if self.suspend(consumption):
            self.register(consumption, provider, consumer)
            return True

        return False

    def set_capacity(
        self,
        spreader: ResourceSpreader,
        per_tick: float | None = None,
        factor: float | None = None,
    ) -> None:
        """Change the capacity of a spreader, rescheduling its group."""
        finished = self._settle(spreader.group)
        if per_tick is not None:
            if per_tick < 0:
                raise ValueError(f"negative capacity: {per_tick}")

            spreader.per_tick_processing = float(per_tick)

        if factor is not None:
            spreader.processing_factor = float(factor)

        self._stale[spreader.group.id] = spreader.group
        self._notify(finished)

    def settle(self, spreader: ResourceSpreader) -> None:
        """Bring the group of a spreader up to the current tick."""
        self._notify(self._settle(spreader.group))

    @staticmethod
    def direct_group(spreader: ResourceSpreader) -> set[ResourceSpreader]:
        """Recompute the influence group of a spreader from scratch."""
        return direct_group(spreader)

    def update_groups(self, spreader: ResourceSpreader) -> set[InfluenceGroup]:
        """Merge and split the group of a dirty spreader.

        Groups are first extended with every spreader reached by a
        consumption added since the last update.  Then, if a member lost
        a consumption, the group is split: the member with the smallest
        id is used to rebuild a group with `direct_group`, and so on
        with the members left over.

        Returns:
            groups (set): the groups resulting from the update.

        """
        group = spreader.group
        now = self.clock.current_tick
        while True:
            absorbed = set()
            for member in group.sorted_members():
                for consumption in member.added:
                    if consumption.state is not ConsumptionState.REGISTERED:
                        continue

                    for other in (consumption.provider, consumption.consumer):
                        if other.group is not group:
                            absorbed |= other.group.members

                member.added.clear()

            if not absorbed:
                break

            for other in sorted(absorbed, key=lambda s: s.id):
                if (old := other.group).alive and old is not group:
                    old.alive = False
                    old.drop_subscription()

                other.group = group

            group.members |= absorbed

        if not any(member.lost for member in group.members):
            return {group}

        left = set(group.members)
        for member in left:
            member.lost = False

        groups = set()
        while left:
            representative = min(left, key=lambda s: s.id)
            members = direct_group(representative)
            left -= members
            if not groups:
                group.members = members
                for member in members:
                    member.group = group

                groups.add(group)
            else:
                groups.add(InfluenceGroup(members, now))

        return groups

    def assign_shares(self, group: InfluenceGroup) -> None:
        """Assign shares to the consumptions of a group."""
        consumptions = group.consumptions()
        self.logic.assign(consumptions)
        if self.debug_shares:
            tick = self.clock.current_tick
            for consumption in consumptions:
                entry = (
                    tick,
                    group.id,
                    consumption.id,
                    consumption.provider_share,
                    consumption.consumer_share,
                )
                self.share_log.append(entry)
                logger.debug(
                    "share group={} consumption={} provider={} "
                    "consumer={}".format(*entry[1:])
                )

    @staticmethod
    def earliest_completion(group: InfluenceGroup) -> int | None:
        """Return the ticks until the next completion in the group.

        Returns:
            ticks (int or None): the number of ticks, `None` when no
                    consumption of the group can progress.

        """
        earliest = None
        for consumption in group.consumptions():
            ticks = consumption.ticks_to_complete()
            if ticks is not None and (earliest is None or ticks < earliest):
                earliest = ticks

        return earliest

    def group_tick(self, group: InfluenceGroup) -> list[ResourceConsumption]:
        """Settle a group when its subscription fires.

        Returns:
            finished (list): the consumptions completed at this tick.

        """
        if not group.alive:
            return []

        finished = self._settle(group)
        self._stale[group.id] = group
        self._notify(finished)
        return finished

    def flush(self) -> bool:
        """Update dirty groups and reschedule them.

        This is a flush hook of the clock.

        Returns:
            busy (bool): whether anything was done.

        """
        if not self._dirty and not self._stale:
            return False

        groups = {}
        dirty = sorted(self._dirty.values(), key=lambda s: s.id)
        self._dirty.clear()
        for spreader in dirty:
            if spreader.added or spreader.lost:
                for group in self.update_groups(spreader):
                    groups[group.id] = group
            else:
                groups[spreader.group.id] = spreader.group

        for group in self._stale.values():
            if group.alive:
                groups[group.id] = group

        self._stale.clear()
        for group_id in sorted(groups):
            if (group := groups[group_id]).alive:
                self._reschedule(group)

        return True

    def _reschedule(self, group: InfluenceGroup) -> None:
        if not any(member.consumptions for member in group.members):
            group.drop_subscription()
            return

        self.assign_shares(group)
        ticks = self.earliest_completion(group)
        if ticks is None:
            group.drop_subscription()
        elif (subscription := group.subscription) is not None:
            subscription.rearm(ticks)
        else:
            group.subscription = self.clock.subscribe(
                partial(self.group_tick, group), ticks
            )

    def _settle(self, group: InfluenceGroup) -> list[ResourceConsumption]:
        """Progress a group up to now and detach finished consumptions."""
        now = self.clock.current_tick
        consumptions = group.consumptions()
        if (elapsed := now - group.last_update) > 0:
            for consumption in consumptions:
                consumption.advance(elapsed)

            for member in group.members:
                member.account(now)

            group.last_update = now

        finished = []
        for consumption in consumptions:
            if consumption.finished:
                self._detach(consumption)
                consumption.finish()
                finished.append(consumption)

        return finished

    def _detach(self, consumption: ResourceConsumption) -> None:
        for spreader in (consumption.provider, consumption.consumer):
            spreader.consumptions.pop(consumption.id, None)
            spreader.lost = True
            self._dirty[spreader.id] = spreader

        consumption.provider_share = consumption.consumer_share = None

    @staticmethod
    def _notify(finished: list[ResourceConsumption]) -> None:
        for consumption in finished:
            if (handler := consumption.on_done) is not None:
                handler(consumption)
