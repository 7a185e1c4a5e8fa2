"""Power profiles of physical machines.

A profile gives the power state of each machine state and says how the
transition states (switching on and off) end: either after a fixed
duration, or when a script of hidden-consumer tasks is complete.  A
script given to the running state is the load of the machine itself
(its hypervisor, say): it starts over after its last task for as long
as the machine runs.  The off state never has a script.

Two ready-made profiles come from measurements of a typical cloud
node: `simplified_profile` (fixed durations, constant draw during
transitions) and `complex_profile` (linear draw in every state but off,
switching-off driven by a hidden-consumer script).

"""

from dataclasses import dataclass, field
from enum import Enum

from energy.model import ConstantModel, LinearModel
from energy.power import PowerState


class PMState(Enum):

    """State of a physical machine."""

    OFF = "off"
    SWITCHING_ON = "switching-on"
    RUNNING = "running"
    SWITCHING_OFF = "switching-off"

    @property
    def transitional(self) -> bool:
        return self in (PMState.SWITCHING_ON, PMState.SWITCHING_OFF)


@dataclass(frozen=True)
class ScriptStep:

    """A task of the hidden consumer.

    Amounts are fractions of the machine's total processing in a
    second: a `limit` of 0.11 uses at most 11% of the machine, a
    `total` of 0.275 is what the machine processes in 0.275 second at
    full speed.

    Args:
        delay (float): seconds to wait after the previous task (or the
                start of the state) before registering this one.
        total (float): the work of the task.
        limit (float): the maximum share of the machine.

    """

    delay: float
    total: float
    limit: float

    def __post_init__(self):
        if self.delay < 0:
            raise ValueError(f"negative delay: {self.delay}")

        if not self.total > 0 or not 0 < self.limit <= 1:
            raise ValueError(
                f"invalid hidden task: total={self.total} limit={self.limit}"
            )

    @property
    def seconds(self) -> float:
        """Seconds the task lasts when it gets its whole limit."""
        return self.total / self.limit


@dataclass(frozen=True)
class PowerProfile:

    """Power states and transitions of a physical machine."""

    name: str
    states: dict[PMState, PowerState]
    durations: dict[PMState, float] = field(default_factory=dict)
    scripts: dict[PMState, tuple[ScriptStep, ...]] = field(
        default_factory=dict
    )

    def __post_init__(self):
        if missing := set(PMState) - set(self.states):
            names = ", ".join(sorted(state.value for state in missing))
            raise ValueError(f"profile {self.name!r} misses states: {names}")

        if self.scripts.get(PMState.OFF):
            raise ValueError(f"profile {self.name!r}: off can't run a script")

        for state, script in self.scripts.items():
            if script and self.states[state].processing_factor <= 0:
                raise ValueError(
                    f"profile {self.name!r}: a script can't progress "
                    f"in {state.value}, which has no processing"
                )

        for state in (PMState.SWITCHING_ON, PMState.SWITCHING_OFF):
            if self.scripts.get(state):
                continue

            if self.durations.get(state, -1) < 0:
                raise ValueError(
                    f"profile {self.name!r}: {state.value} needs a "
                    "duration or a script"
                )

    def power_state(self, state: PMState) -> PowerState:
        return self.states[state]

    def script(self, state: PMState) -> tuple[ScriptStep, ...]:
        return self.scripts.get(state, ())

    def duration(self, state: PMState) -> float:
        """Seconds a transition lasts without a script."""
        return self.durations.get(state, 0.0)


IDLE_WATTS = 368.8
MAX_WATTS = 722.7
OFF_WATTS = 36.4

SWITCH_OFF_SCRIPT = (
    ScriptStep(0.0, 0.275, 0.11),
    ScriptStep(2.5, 0.855, 0.19),
    ScriptStep(1.0, 0.228, 0.15),
)

# No measured script exists for the boot: a half-loaded machine for as
# long as the simplified boot.
SWITCH_ON_SCRIPT = (ScriptStep(0.0, 100.0, 0.5),)


def simplified_profile(
    idle: float = IDLE_WATTS,
    maximum: float = MAX_WATTS,
    off: float = OFF_WATTS,
) -> PowerProfile:
    """Return the profile with fixed transition durations."""
    running = LinearModel(idle, maximum)
    return PowerProfile(
        "simplified",
        {
            PMState.OFF: PowerState("off", ConstantModel(off), 0.0),
            PMState.SWITCHING_ON: PowerState(
                "switching-on", ConstantModel(483.1), 0.0
            ),
            PMState.RUNNING: PowerState("running", running, 1.0),
            PMState.SWITCHING_OFF: PowerState(
                "switching-off", ConstantModel(409.2), 0.0
            ),
        },
        durations={PMState.SWITCHING_ON: 200.0, PMState.SWITCHING_OFF: 12.0},
    )


def complex_profile(
    idle: float = IDLE_WATTS,
    maximum: float = MAX_WATTS,
    off: float = OFF_WATTS,
    switch_on: tuple[ScriptStep, ...] = SWITCH_ON_SCRIPT,
    switch_off: tuple[ScriptStep, ...] = SWITCH_OFF_SCRIPT,
    running: tuple[ScriptStep, ...] = (),
) -> PowerProfile:
    """Return the profile driven by hidden-consumer scripts.

    `running` is the recurring load of a running machine, none by
    default.

    """
    linear = LinearModel(idle, maximum)
    return PowerProfile(
        "complex",
        {
            PMState.OFF: PowerState("off", ConstantModel(off), 0.0),
            PMState.SWITCHING_ON: PowerState("switching-on", linear, 1.0),
            PMState.RUNNING: PowerState("running", linear, 1.0),
            PMState.SWITCHING_OFF: PowerState("switching-off", linear, 1.0),
        },
        scripts={
            PMState.SWITCHING_ON: tuple(switch_on),
            PMState.SWITCHING_OFF: tuple(switch_off),
            PMState.RUNNING: tuple(running),
        },
    )


def instant_profile(idle: float = IDLE_WATTS, maximum: float = MAX_WATTS):
    """Return a profile switching on and off without delay.

    Handy for scheduler experiments where only the placement matters.

    """
    linear = LinearModel(idle, maximum)
    return PowerProfile(
        "instant",
        {
            PMState.OFF: PowerState("off", ConstantModel(0.0), 0.0),
            PMState.SWITCHING_ON: PowerState("switching-on", linear, 0.0),
            PMState.RUNNING: PowerState("running", linear, 1.0),
            PMState.SWITCHING_OFF: PowerState("switching-off", linear, 0.0),
        },
        durations={PMState.SWITCHING_ON: 0.0, PMState.SWITCHING_OFF: 0.0},
    )


PROFILES = {
    "simplified": simplified_profile,
    "complex": complex_profile,
    "instant": instant_profile,
}
