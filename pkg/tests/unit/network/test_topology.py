"""Four transfers across shared ports, against a water-filling oracle."""

import pytest

from network import (
    NetworkNode,
    Repository,
    StorageObject,
    initiate_transfer,
    set_latency,
)

SIZE = 768_000_000
# A sixtieth of the object per second, in bytes per tick of 1 ms.
UNIT = 12_800.0

# Port capacities, in units.
PORTS = {
    "a-out": 4,
    "b-out": 2,
    "c-out": 10,
    "d-in": 10,
    "e-in": 3,
    "f-in": 10,
}

# Transfer name: (source, target).
FLOWS = {
    "first": ("a", "d"),
    "second": ("b", "e"),
    "third": ("b", "f"),
    "fourth": ("c", "e"),
}


def water_filling(flows, capacities):
    """Return the max-min fair rates of flows over shared links."""
    rates = {flow: 0.0 for flow in flows}
    residual = dict(capacities)
    active = set(flows)
    while active:
        step, link_found = None, None
        for link, left in residual.items():
            users = [f for f in active if link in flows[f]]
            if users and (step is None or left / len(users) < step):
                step, link_found = left / len(users), link

        for flow in active:
            rates[flow] += step
            for link in flows[flow]:
                residual[link] -= step

        active = {f for f in active if link_found not in flows[f]}

    return rates


def completion_times(flows, capacities, size):
    """Return the completion time of each flow, in the unit of rates."""
    left = {flow: float(size) for flow in flows}
    now, times = 0.0, {}
    while left:
        rates = water_filling({f: flows[f] for f in left}, capacities)
        elapsed = min(left[f] / rates[f] for f in left)
        now += elapsed
        for flow in list(left):
            left[flow] -= rates[flow] * elapsed
            if left[flow] <= 1e-6 * size:
                times[flow] = now
                del left[flow]

    return times


def links(source, target):
    return (f"{source}-out", f"{target}-in")


@pytest.fixture
def transfers(kernel):
    repos = {}
    for name in "abcdef":
        rate_in = PORTS.get(f"{name}-in", 10) * UNIT
        rate_out = PORTS.get(f"{name}-out", 10) * UNIT
        node = NetworkNode(kernel, name, rate_in, rate_out)
        repos[name] = Repository(name, 10 * SIZE, node)

    started = {}
    for flow, (source, target) in FLOWS.items():
        repos[source].register_object(StorageObject(flow, SIZE))
        set_latency(repos[source].node, repos[target].node, 0)
        started[flow] = initiate_transfer(repos[source], repos[target], flow)

    return started


def test_completion_pattern(clock, transfers):
    """The transfers complete at 15, 60, 60 and 30 seconds."""
    clock.simulate_until_last_event()
    times = {
        flow: clock.to_seconds(transfer.finished_at)
        for flow, transfer in transfers.items()
    }
    assert times == pytest.approx(
        {"first": 15.0, "second": 60.0, "third": 60.0, "fourth": 30.0}
    )


def test_matches_the_oracle(clock, transfers):
    """Simulated completions match an independent water-filling."""
    clock.simulate_until_last_event()
    capacities = {port: units * UNIT for port, units in PORTS.items()}
    flows = {flow: links(*ends) for flow, ends in FLOWS.items()}
    expected = completion_times(flows, capacities, SIZE)
    for flow, transfer in transfers.items():
        assert transfer.finished_at == pytest.approx(expected[flow], rel=1e-6)
