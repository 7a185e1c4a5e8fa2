import pytest

from energy import DirectMeter, mark, utilisation
from machines import (
    AllocationError,
    PMState,
    PowerProfile,
    PowerStateError,
    ResourceVector,
    ScriptStep,
    UnfitRequest,
    complex_profile,
    simplified_profile,
)

GB = 1_000_000_000


def track(clock, pm):
    """Record the state changes of a machine, with their tick."""
    changes = []
    pm.state_listeners.append(
        lambda machine, old, new: changes.append((clock.current_tick, new))
    )
    return changes


def test_power_on(clock, make_pm):
    """A simplified machine takes 200 s to switch on."""
    pm = make_pm(profile=simplified_profile(), state=PMState.OFF)
    changes = track(clock, pm)
    assert pm.turn_on()
    assert not pm.turn_on()
    clock.simulate_until_last_event()
    assert changes == [
        (0, PMState.SWITCHING_ON),
        (200_000, PMState.RUNNING),
    ]
    assert pm.cpu_provider.capacity == 4


def test_no_processing_while_off(make_pm):
    """An off machine has no processing capacity."""
    pm = make_pm(profile=simplified_profile(), state=PMState.OFF)
    assert pm.cpu_provider.capacity == 0


def test_switch_off_script(clock, make_pm):
    """The hidden-consumer script of the complex profile lasts 12.02 s."""
    pm = make_pm(profile=complex_profile())
    changes = track(clock, pm)
    assert pm.switch_off()
    clock.simulate_until_last_event()
    assert [state for _, state in changes] == [
        PMState.SWITCHING_OFF,
        PMState.OFF,
    ]
    assert clock.to_seconds(changes[-1][0]) == pytest.approx(12.02, abs=0.002)
    assert pm.hidden_consumer.processed == pytest.approx(
        (0.275 + 0.855 + 0.228) * 4000
    )


def test_switch_off_with_allocations(make_pm):
    """A machine holding allocations can't be switched off."""
    pm = make_pm()
    pm.allocate(ResourceVector(1, 1.0, GB))
    with pytest.raises(PowerStateError):
        pm.switch_off()

    assert pm.state is PMState.RUNNING


def test_turn_on_while_switching_off(clock, make_pm):
    """A machine switching off switches back on once off."""
    pm = make_pm(profile=simplified_profile())
    changes = track(clock, pm)
    pm.switch_off()
    clock.defer(5000, pm.turn_on)
    clock.simulate_until_last_event()
    assert changes == [
        (0, PMState.SWITCHING_OFF),
        (12_000, PMState.OFF),
        (12_000, PMState.SWITCHING_ON),
        (212_000, PMState.RUNNING),
    ]


def test_switch_off_while_switching_on(clock, make_pm):
    """A machine switching on switches off once running."""
    pm = make_pm(profile=simplified_profile(), state=PMState.OFF)
    pm.turn_on()
    clock.defer(1000, pm.switch_off)
    clock.simulate_until_last_event()
    assert pm.state is PMState.OFF


HYPERVISOR = (ScriptStep(0.0, 1.0, 0.1),)


def test_running_script_loads_the_machine(clock, make_pm):
    """A running script keeps a tenth of the machine busy."""
    pm = make_pm(profile=complex_profile(running=HYPERVISOR))
    since = mark(pm.cpu_provider)
    meter = DirectMeter(pm.cpu_provider)
    meter.start(clock.to_ticks(1))
    clock.defer(clock.to_ticks(30), meter.stop)
    clock.simulate_until(clock.to_ticks(30) + 1)
    assert utilisation(pm.cpu_provider, since) == pytest.approx(
        0.1, rel=1e-3
    )
    assert meter.read() == pytest.approx(
        (368.8 + 0.1 * (722.7 - 368.8)) * 30, rel=1e-3
    )


def test_running_script_stops_with_the_machine(clock, make_pm):
    """The running script is cancelled once the machine switches off."""
    pm = make_pm(profile=complex_profile(running=HYPERVISOR))
    clock.simulate_until(clock.to_ticks(30))
    pm.switch_off()
    clock.simulate_until_last_event()
    assert pm.state is PMState.OFF
    assert pm.hidden_consumer.processed == pytest.approx(
        0.1 * 4 * 30_000 + (0.275 + 0.855 + 0.228) * 4000, rel=1e-3
    )


def test_running_script_restarts_after_boot(clock, make_pm):
    """The running script starts again when the machine is back on."""
    pm = make_pm(
        profile=complex_profile(running=HYPERVISOR), state=PMState.OFF
    )
    assert pm.hidden_consumer.processed == 0
    pm.turn_on()
    clock.simulate_until(clock.to_ticks(250))
    assert pm.state is PMState.RUNNING
    since = mark(pm.cpu_provider)
    clock.simulate_until(clock.to_ticks(280))
    assert utilisation(pm.cpu_provider, since) == pytest.approx(
        0.1, rel=1e-2
    )


def test_profile_scripts_need_processing():
    """Off never runs a script, nor does a state without processing."""
    with pytest.raises(ValueError):
        PowerProfile(
            "broken",
            simplified_profile().states,
            durations={
                PMState.SWITCHING_ON: 1.0,
                PMState.SWITCHING_OFF: 1.0,
            },
            scripts={PMState.OFF: HYPERVISOR},
        )

    with pytest.raises(ValueError):
        PowerProfile(
            "broken",
            simplified_profile().states,
            scripts={PMState.SWITCHING_ON: HYPERVISOR},
            durations={PMState.SWITCHING_OFF: 1.0},
        )


def test_allocate(make_pm):
    """Allocations reserve resources until released."""
    pm = make_pm()
    freed = []
    pm.free_listeners.append(freed.append)
    allocation = pm.allocate(ResourceVector(3, 1.0, 4 * GB))
    assert pm.free == ResourceVector(1, 1.0, 12 * GB)
    assert pm.allocate(ResourceVector(2, 1.0, GB)) is None
    assert allocation.release()
    assert not allocation.release()
    assert pm.free == pm.capacity
    assert freed == [pm]


def test_unfit_requests(make_pm):
    """Requests beyond the total capacity can never be allocated."""
    pm = make_pm()
    with pytest.raises(UnfitRequest):
        pm.allocate(ResourceVector(5, 1.0, GB))

    with pytest.raises(UnfitRequest):
        pm.allocate(ResourceVector(1, 2.0, GB))

    with pytest.raises(ValueError):
        pm.allocate(ResourceVector(0, 1.0, GB))


def test_allocate_while_off(make_pm):
    """Only running machines allocate."""
    pm = make_pm(state=PMState.OFF)
    assert not pm.can_allocate(ResourceVector(1, 1.0, GB))
    with pytest.raises(AllocationError):
        pm.allocate(ResourceVector(1, 1.0, GB))


def test_lenient_allocation(make_pm):
    """A lenient machine down-sizes requests to what is free."""
    pm = make_pm()
    pm.allocate(ResourceVector(3, 1.0, GB))
    allocation = pm.allocate(ResourceVector(2, 1.0, GB), strict=False)
    assert allocation.resources == ResourceVector(1, 1.0, GB)
    assert pm.free.empty


def test_allocation_expiry(clock, make_pm):
    """An unused allocation expires; a bound one doesn't."""
    pm = make_pm()
    unused = pm.allocate(ResourceVector(1, 1.0, GB), expiry=100)
    used = pm.allocate(ResourceVector(1, 1.0, GB), expiry=100)
    used.bind(object())
    clock.simulate_until_last_event()
    assert unused.expired
    assert unused.released
    assert not used.released
    assert pm.free == ResourceVector(3, 1.0, 15 * GB)
    with pytest.raises(AllocationError):
        unused.bind(object())


def test_resize(make_pm):
    """Resizing is all or nothing."""
    pm = make_pm()
    allocation = pm.allocate(ResourceVector(2, 1.0, GB))
    assert pm.resize(allocation, ResourceVector(4, 1.0, GB))
    assert pm.free.cores == 0
    assert not pm.resize(allocation, ResourceVector(4, 1.0, 17 * GB))
    assert allocation.resources == ResourceVector(4, 1.0, GB)
