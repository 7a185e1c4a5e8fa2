import pytest

from sharing import (
    ConsumptionState,
    EqualSplit,
    RegistrationError,
    ResourceConsumption,
    SharingKernel,
)


def run(clock, kernel, total, limit, provider, consumer):
    """Register a consumption, return it and the list of done ticks."""
    done = []
    consumption = ResourceConsumption(
        total, limit, lambda c: done.append(clock.current_tick)
    )
    kernel.register(consumption, provider, consumer)
    return consumption, done


def test_single_consumption(clock, kernel):
    """A lone consumption completes after total / rate ticks."""
    provider = kernel.provider(10.0)
    consumer = kernel.consumer(10.0)
    consumption, done = run(
        clock, kernel, 100, float("inf"), provider, consumer
    )
    clock.simulate_until_last_event()
    assert done == [10]
    assert consumption.state is ConsumptionState.COMPLETED
    assert provider.processed == pytest.approx(100)
    assert consumer.processed == pytest.approx(100)


def test_limit_caps_progress(clock, kernel):
    """A consumption never goes faster than its limit."""
    provider = kernel.provider(10.0)
    consumer = kernel.consumer(10.0)
    _, done = run(clock, kernel, 50, 5, provider, consumer)
    clock.simulate_until_last_event()
    assert done == [10]


def test_two_consumptions_share_a_provider(clock, kernel):
    """Two equal consumptions on one provider get half each."""
    provider = kernel.provider(10.0)
    _, first = run(clock, kernel, 100, 100, provider, kernel.consumer(10.0))
    _, second = run(clock, kernel, 100, 100, provider, kernel.consumer(10.0))
    clock.simulate_until_last_event()
    assert first == [20]
    assert second == [20]


def test_shorter_consumption_frees_capacity(clock, kernel):
    """When a consumption completes, the others speed up."""
    provider = kernel.provider(10.0)
    _, short = run(clock, kernel, 50, 100, provider, kernel.consumer(10.0))
    _, long = run(clock, kernel, 150, 100, provider, kernel.consumer(10.0))
    clock.simulate_until_last_event()
    assert short == [10]
    # 50 units at 5 per tick, then 100 at 10 per tick.
    assert long == [20]


def test_max_min_shares(clock, kernel):
    """A consumption limited by its consumer leaves the rest to others."""
    provider = kernel.provider(10.0)
    slow, _ = run(clock, kernel, 1000, 100, provider, kernel.consumer(2.0))
    fast, _ = run(clock, kernel, 1000, 100, provider, kernel.consumer(100.0))
    clock.flush()
    assert slow.provider_share == pytest.approx(2.0)
    assert fast.provider_share == pytest.approx(8.0)


def test_equal_split_respects_limits(clock):
    """The equal split gives limited consumptions their limit."""
    kernel = SharingKernel(clock, EqualSplit())
    provider = kernel.provider(10.0)
    limited, _ = run(clock, kernel, 1000, 2, provider, kernel.consumer(20.0))
    free, _ = run(clock, kernel, 1000, 100, provider, kernel.consumer(20.0))
    clock.flush()
    assert limited.provider_share == pytest.approx(2.0)
    assert free.provider_share == pytest.approx(8.0)


def test_cancel_keeps_remaining_work(clock, kernel):
    """A cancelled consumption calls its handler and keeps what's left."""
    provider = kernel.provider(10.0)
    consumer = kernel.consumer(10.0)
    consumption, done = run(clock, kernel, 100, 100, provider, consumer)
    clock.defer(3, lambda: kernel.cancel(consumption))
    clock.simulate_until_last_event()
    assert done == [3]
    assert consumption.cancelled
    assert consumption.remaining == pytest.approx(70)


def test_suspend_and_register_elsewhere(clock, kernel):
    """A suspended consumption resumes with exactly its remaining work."""
    provider = kernel.provider(10.0)
    consumer = kernel.consumer(10.0)
    consumption, done = run(clock, kernel, 100, 100, provider, consumer)
    other_provider = kernel.provider(10.0)
    other_consumer = kernel.consumer(10.0)
    clock.defer(4, lambda: kernel.suspend(consumption))
    clock.defer(
        10,
        lambda: kernel.register(consumption, other_provider, other_consumer),
    )
    clock.simulate_until_last_event()
    assert done == [16]
    assert provider.processed == pytest.approx(40)
    assert other_provider.processed == pytest.approx(60)


def test_capacity_change_reschedules(clock, kernel):
    """Changing the capacity of a spreader changes completion times."""
    provider = kernel.provider(10.0)
    consumer = kernel.consumer(100.0)
    _, done = run(clock, kernel, 100, 100, provider, consumer)
    clock.defer(5, lambda: provider.set_processing(5.0))
    clock.simulate_until_last_event()
    assert done == [15]


def test_registration_errors(kernel):
    """Wrong roles and double registration are refused."""
    provider = kernel.provider(10.0)
    consumer = kernel.consumer(10.0)
    consumption = ResourceConsumption(10, 1)
    with pytest.raises(RegistrationError):
        kernel.register(consumption, consumer, provider)

    kernel.register(consumption, provider, consumer)
    with pytest.raises(RegistrationError):
        kernel.register(consumption, provider, consumer)


def test_invalid_consumptions():
    """Work and limit must be positive."""
    with pytest.raises(ValueError):
        ResourceConsumption(0, 1)

    with pytest.raises(ValueError):
        ResourceConsumption(10, 0)


def test_share_log(clock):
    """Assigned shares can be recorded for debugging."""
    kernel = SharingKernel(clock, debug_shares=True)
    provider = kernel.provider(4.0)
    consumption, _ = run(clock, kernel, 10, 100, provider, kernel.consumer(8))
    clock.flush()
    assert kernel.share_log == [(0, provider.group.id, consumption.id, 4, 4)]
