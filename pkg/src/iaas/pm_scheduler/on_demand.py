"""Switch machines on when requests wait, off when idle."""

from iaas.log import logger
from iaas.pm_scheduler.abc import PMScheduler
from machines.profiles import PMState
from tools.settings import settings


class OnDemand(PMScheduler):

    """Power machines according to the queue.

    While requests wait, the scheduler switches on as few machines as
    needed to hold the queue: the waiting VMs are packed first fit on
    the free resources of running machines, then on the capacity of
    machines already switching on, then on machines switched on for the
    purpose, in registration order.

    When the queue is empty, machines without any allocation are
    switched off once they have been idle for the grace period.

    """

    name = "pm-on-demand"

    def __init__(self, service, grace: int | None = None):
        super().__init__(service)
        if grace is None:
            grace = service.clock.to_ticks(settings.PM_GRACE_SECONDS)

        self.grace = grace
        self.idle_since: dict[int, int] = {}
        self._recheck = None

    def react(self) -> int:
        if self.service.queue:
            actions = self._cover()
        else:
            actions = self._release()

        self.actions += actions
        return actions

    def _cover(self) -> int:
        self.idle_since.clear()
        bins = []
        candidates = []
        for pm in self.service.machines:
            match pm.state:
                case PMState.RUNNING:
                    bins.append([pm, pm.free])
                case PMState.SWITCHING_ON:
                    bins.append([pm, pm.capacity])
                case _:
                    candidates.append(pm)

        actions = 0
        for request in self.service.queue:
            for _ in request.vms:
                for slot in bins:
                    if request.resources.fits(slot[1]):
                        slot[1] = slot[1] - request.resources
                        break
                else:
                    for pm in candidates:
                        if pm.fits(request.resources):
                            candidates.remove(pm)
                            pm.turn_on()
                            actions += 1
                            logger.debug(f"on-demand: switching {pm.name} on")
                            bins.append(
                                [pm, pm.capacity - request.resources]
                            )
                            break

        return actions

    def _release(self) -> int:
        now = self.service.clock.current_tick
        actions = 0
        wake = None
        for pm in self.service.machines:
            if not pm.is_running or not pm.idle:
                self.idle_since.pop(pm.id, None)
                continue

            since = self.idle_since.setdefault(pm.id, now)
            if now - since >= self.grace:
                del self.idle_since[pm.id]
                pm.switch_off()
                actions += 1
                logger.debug(f"on-demand: switching {pm.name} off")
            else:
                at = since + self.grace
                wake = at if wake is None else min(wake, at)

        if wake is not None:
            self._arm(wake - now)

        return actions

    def _arm(self, delay: int) -> None:
        recheck = self._recheck
        clock = self.service.clock
        if recheck is not None and recheck.active:
            if recheck.fire_at <= clock.current_tick + delay:
                return

            recheck.cancel()

        self._recheck = clock.defer(delay, self.service.request_reaction)
