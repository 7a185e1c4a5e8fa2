import pytest

from network import (
    InsufficientSpace,
    MissingObject,
    NetworkNode,
    Repository,
    Router,
    StorageObject,
    TransferState,
    Unconnected,
    initiate_transfer,
    load_local,
    set_latency,
    store_local,
)

MB = 1_000_000
SIZE = 768 * MB
# 102.4 MB/s, in bytes per tick of 1 ms.
RATE = 102_400.0


def repository(kernel, name, rate=RATE, capacity=10_000 * MB, disk=None):
    node = NetworkNode(kernel, name, rate, rate)
    return Repository(name, capacity, node, disk)


def connect(source, target, ticks=0):
    set_latency(source.node, target.node, ticks)
    set_latency(target.node, source.node, ticks)


@pytest.fixture
def pair(kernel):
    source = repository(kernel, "source")
    target = repository(kernel, "target")
    source.register_object(StorageObject("image", SIZE))
    connect(source, target)
    return source, target


def test_transfer_duration(clock, pair):
    """768 MB at 102.4 MB/s take 7.5 seconds."""
    source, target = pair
    done = []
    transfer = initiate_transfer(
        source, target, "image", on_done=lambda t: done.append(t)
    )
    assert target.reserved == SIZE
    clock.simulate_until_last_event()
    assert done == [transfer]
    assert transfer.state is TransferState.DONE
    assert clock.to_seconds(transfer.finished_at) == pytest.approx(7.5)
    assert "image" in target
    assert target.used == SIZE
    assert target.reserved == 0


def test_latency_delays_the_start(clock, pair):
    """A latency of 50 ms adds 50 ms, during which nothing flows."""
    source, target = pair
    connect(source, target, 50)
    transfer = initiate_transfer(source, target, "image")
    clock.simulate_until(50)
    assert transfer.state is TransferState.STAGING
    assert transfer.consumption.remaining == SIZE
    clock.simulate_until_last_event()
    assert clock.to_seconds(transfer.finished_at) == pytest.approx(7.55)


def test_two_transfers_share_the_source(clock, kernel, pair):
    """Two transfers from one source take twice as long."""
    source, target = pair
    other = repository(kernel, "other")
    connect(source, other)
    first = initiate_transfer(source, target, "image")
    second = initiate_transfer(source, other, "image")
    clock.simulate_until_last_event()
    assert clock.to_seconds(first.finished_at) == pytest.approx(15.0)
    assert clock.to_seconds(second.finished_at) == pytest.approx(15.0)


def test_router_scales_the_limit(clock, pair):
    """A router at half speed doubles the duration."""
    source, target = pair
    transfer = initiate_transfer(
        source, target, "image", via=[Router("edge", 0.5)]
    )
    clock.simulate_until_last_event()
    assert clock.to_seconds(transfer.finished_at) == pytest.approx(15.0)


def test_copy_with_a_new_id(clock, pair):
    """A transfer can store the copy under another id."""
    source, target = pair
    initiate_transfer(source, target, "image", target_id="image@vm-1")
    clock.simulate_until_last_event()
    assert "image@vm-1" in target
    assert "image" not in target


def test_transfer_errors(kernel, pair):
    """Missing objects, unconnected nodes and full targets are refused."""
    source, target = pair
    with pytest.raises(MissingObject):
        initiate_transfer(source, target, "nothing")

    lonely = repository(kernel, "lonely")
    with pytest.raises(Unconnected):
        initiate_transfer(source, lonely, "image")

    small = repository(kernel, "small", capacity=SIZE - 1)
    connect(source, small)
    with pytest.raises(InsufficientSpace):
        initiate_transfer(source, small, "image")

    assert small.reserved == 0


def test_cancel_releases_the_reservation(clock, pair):
    """A cancelled transfer frees the space it reserved."""
    source, target = pair
    done = []
    transfer = initiate_transfer(
        source, target, "image", on_done=lambda t: done.append(t.state)
    )
    clock.defer(1000, transfer.cancel)
    clock.simulate_until_last_event()
    assert done == [TransferState.CANCELLED]
    assert target.reserved == 0
    assert "image" not in target


def test_local_copies_use_the_disk(clock, kernel):
    """Local writes and reads go through the disk spreaders."""
    disk = repository(kernel, "disk", disk=RATE / 2)
    stored = []
    store_local(
        disk, StorageObject("memory", SIZE), lambda t: stored.append(t)
    )
    clock.simulate_until_last_event()
    assert clock.to_seconds(stored[0].finished_at) == pytest.approx(15.0)
    assert "memory" in disk
    assert disk.node.outbound.processed == 0

    loaded = []
    load_local(disk, "memory", lambda t: loaded.append(t))
    clock.simulate_until_last_event()
    assert len(loaded) == 1
    assert "memory" not in disk
    assert disk.used == 0


def test_local_copy_needs_space(kernel):
    """Writing locally reserves space like any transfer."""
    small = repository(kernel, "small", capacity=MB)
    with pytest.raises(InsufficientSpace):
        store_local(small, StorageObject("memory", SIZE))
