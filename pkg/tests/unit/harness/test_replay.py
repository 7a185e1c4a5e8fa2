import pytest

from harness import (
    Replay,
    ScenarioError,
    SyntheticSpec,
    Trace,
    TraceJob,
    generate_trace,
    replay,
)


def test_basic_queue(small_scenario):
    """A job waits for the cores a running job holds."""
    trace = Trace([TraceJob("j1", 0, 10, 2), TraceJob("j2", 0, 10, 4)])
    result = replay(small_scenario(), trace)
    first, second = result.records
    assert [first.outcome, second.outcome] == ["done", "done"]
    tick = result.tick_seconds
    assert first.completed * tick == pytest.approx(10.001, abs=0.003)
    assert second.running >= first.completed
    assert second.completed * tick == pytest.approx(20.002, abs=0.006)
    measurement = result.measurement
    assert measurement.completed == 2
    assert measurement.task_count == 2
    assert measurement.machine_count == 1
    assert measurement.simulated_seconds == pytest.approx(20.002, abs=0.006)
    assert measurement.completions == sorted(measurement.completions)
    assert result.energy == {}
    assert measurement.energy_joules is None


def test_nonqueuing_rejects(small_scenario):
    """Without a queue, a job that doesn't fit right away is rejected."""
    scenario = small_scenario(schedulers={"vm": "first-fit-nonqueuing"})
    trace = Trace([TraceJob("j1", 0, 10, 4), TraceJob("j2", 0, 10, 4)])
    result = replay(scenario, trace)
    first, second = result.records
    assert first.outcome == "done"
    assert second.outcome == "rejected"
    assert second.reason == "no capacity available right now"
    assert result.measurement.rejected == 1


def test_job_too_big(small_scenario):
    """A job no machine could ever host is rejected at submission."""
    scenario = small_scenario(vm={"memory": 512_000_000_000})
    result = replay(scenario, Trace([TraceJob("j1", 0, 10, 1)]))
    (record,) = result.records
    assert record.outcome == "rejected"
    assert record.submitted == 0
    assert record.completed is None
    assert result.measurement.simulated_seconds == 0


def test_wide_jobs_get_several_vms(small_scenario):
    """Jobs wider than the largest VM are split over several VMs."""
    scenario = small_scenario(vm={"max_cores": 2})
    result = replay(scenario, Trace([TraceJob("j1", 0, 5, 3)]))
    (record,) = result.records
    assert record.vm_count == 2
    assert record.resources.cores == 2
    assert record.outcome == "done"


def test_later_submissions(small_scenario):
    """Jobs are submitted at their trace time."""
    trace = Trace([TraceJob("j1", 0, 1, 1), TraceJob("j2", 30, 1, 1)])
    result = replay(small_scenario(), trace)
    first, second = result.records
    assert second.submitted == 30_000
    assert second.started > first.completed
    assert result.measurement.simulated_seconds == pytest.approx(
        31.002, abs=0.006
    )


def test_metered_replay(small_scenario):
    """Metered replays report the energy of machines and cooling."""
    scenario = small_scenario(
        machines=[{"count": 1, "cores": 4, "profile": "simplified"}],
        metering={"period_seconds": 1, "hvac_watts": 100},
    )
    result = replay(scenario, Trace([TraceJob("j1", 0, 10, 4)]))
    assert set(result.energy) == {"pm-0", "hvac", "total"}
    assert result.energy["pm-0"] == pytest.approx(7227.3688, rel=1e-3)
    assert result.energy["hvac"] == pytest.approx(1000.1, rel=1e-3)
    assert result.energy["total"] == pytest.approx(
        result.energy["pm-0"] + result.energy["hvac"]
    )
    assert result.measurement.energy_joules == result.energy["total"]
    assert {reading.meter for reading in result.readings} == {
        "pm-0",
        "hvac",
        "total",
    }


def test_meter_period_override(small_scenario):
    """The period given to the replay overrides the scenario's."""
    result = replay(
        small_scenario(), Trace([TraceJob("j1", 0, 2, 1)]), meter_period=0.5
    )
    assert result.measurement.meter_period == 0.5
    assert "total" in result.energy


def test_scenario_without_machines(small_scenario):
    """A scenario must have machines."""
    with pytest.raises(ScenarioError):
        Replay(small_scenario(machines=[]), Trace([TraceJob("j1", 0, 1)]))


def test_meters_leave_results_unchanged(small_scenario):
    """A metered replay simulates exactly what a plain one does."""
    scenario = small_scenario(
        machines=[{"count": 2, "cores": 4, "profile": "simplified"}],
    )
    trace = generate_trace(
        SyntheticSpec(
            task_count=40,
            max_parallel=10,
            spread=5.0,
            length_range=(1.0, 20.0),
            seed=3,
        )
    )
    plain = replay(scenario, trace)
    metered = replay(scenario, trace, meter_period=1)
    assert plain.energy == {}
    assert metered.energy["total"] > 0
    assert simulated(metered) == simulated(plain)
    assert plain.measurement.completed == 40
