"""Keep every machine running."""

from iaas.pm_scheduler.abc import PMScheduler
from machines.profiles import PMState


class AlwaysOn(PMScheduler):

    """Switch on every machine that isn't running or switching on."""

    name = "pm-always-on"

    def react(self) -> int:
        actions = 0
        for pm in self.service.machines:
            if pm.state in (PMState.OFF, PMState.SWITCHING_OFF):
                pm.turn_on()
                actions += 1

        self.actions += actions
        return actions
