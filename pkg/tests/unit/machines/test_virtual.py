import random

import pytest

from machines import (
    TRANSITIONS,
    AllocationError,
    MachineError,
    ResourceVector,
    VMImage,
    VMState,
    VMStateError,
    deploy_vm,
)
from network import TransferError, set_latency

MB = 1_000_000
GB = 1000 * MB


@pytest.fixture
def image(central):
    image = VMImage("image", MB, boot_seconds=1.0)
    central.register_object(image.stored)
    return image


@pytest.fixture
def connect(central):
    """Connect machines to each other and to the central repository."""

    def connect(*machines):
        nodes = [central.node] + [pm.node for pm in machines]
        for node in nodes:
            for other in nodes:
                if other is not node:
                    set_latency(node, other, 0)

        return machines

    return connect


def states_of(vm):
    states = []
    vm.state_listeners.append(lambda vm, old, new: states.append(new))
    return states


def test_deploy(clock, make_pm, connect, central, image):
    """A deployed VM copies its image, boots, then runs."""
    (pm,) = connect(make_pm())
    allocation = pm.allocate(ResourceVector(2, 1.0, MB))
    running = []
    vm = deploy_vm(allocation, image, central, on_done=running.append)
    states = states_of(vm)
    assert vm.state is VMState.INITIAL_TRANSFER
    assert allocation.vm is vm
    clock.simulate_until_last_event()
    assert states == [VMState.SHUTDOWN, VMState.STARTUP, VMState.RUNNING]
    assert running == [vm]
    assert vm.image_copy_id in pm.repository
    # One tick of copy, one second of boot.
    assert clock.current_tick == 1 + 1000 + 1
    assert pm.hosted_vms == [vm]


def test_tasks_share_the_machine(clock, make_pm, connect, central, image):
    """128 single-core tasks on a 64-core VM take twice their length."""
    (pm,) = connect(make_pm(cores=64))
    allocation = pm.allocate(ResourceVector(64, 1.0, MB))
    vm = deploy_vm(allocation, image, central)
    clock.simulate_until_last_event()
    start = clock.current_tick
    done = []
    for _ in range(128):
        vm.new_task(1000, 1.0, lambda task: done.append(clock.current_tick))

    clock.simulate_until_last_event()
    assert len(done) == 128
    assert set(done) == {start + 2000}
    assert not vm.tasks


def test_suspend_and_resume(clock, make_pm, connect, central, image):
    """Suspending keeps the work done; resuming continues from there."""
    (pm,) = connect(make_pm())
    vm = deploy_vm(pm.allocate(ResourceVector(1, 1.0, MB)), image, central)
    clock.simulate_until_last_event()
    states = states_of(vm)
    task = vm.new_task(10_000, 1.0)
    clock.defer(3000, vm.suspend)
    clock.simulate_until_last_event()
    assert vm.state is VMState.SUSPENDED
    assert vm.allocation is None
    assert pm.free == pm.capacity
    assert vm.memory_id in pm.repository
    left = task.remaining + task.under
    assert 6999 <= left <= 7000

    vm.resume()
    clock.simulate_until_last_event()
    assert task.completed
    assert task.consumed == pytest.approx(10_000)
    assert vm.memory_id not in pm.repository
    assert states == [
        VMState.SUSPEND_TRANSFER,
        VMState.SUSPENDED,
        VMState.RESUME_TRANSFER,
        VMState.RUNNING,
    ]


def test_migrate(clock, make_pm, connect, central, image):
    """A running VM migrates with its tasks and its image copy."""
    source, target = connect(make_pm(), make_pm())
    vm = deploy_vm(
        source.allocate(ResourceVector(2, 1.0, MB)), image, central
    )
    clock.simulate_until_last_event()
    states = states_of(vm)
    task = vm.new_task(5000, 1.0)
    migrated = []
    vm.migrate(target, on_done=migrated.append)
    assert target.free.cores == 2
    clock.simulate_until_last_event()
    assert migrated == [vm]
    assert states == [
        VMState.SUSPEND_TRANSFER,
        VMState.SUSPENDED,
        VMState.MIGRATING,
        VMState.RESUME_TRANSFER,
        VMState.RUNNING,
    ]
    assert vm.host is target
    assert source.free == source.capacity
    assert vm.image_copy_id in target.repository
    assert vm.image_copy_id not in source.repository
    assert task.completed


def test_migrate_to_a_full_machine(clock, make_pm, connect, central, image):
    """Migration fails upfront when the target can't hold the VM."""
    source, target = connect(make_pm(), make_pm(cores=1))
    vm = deploy_vm(
        source.allocate(ResourceVector(2, 1.0, MB)), image, central
    )
    clock.simulate_until_last_event()
    with pytest.raises(AllocationError):
        vm.migrate(target)

    assert vm.state is VMState.RUNNING


def test_illegal_operations(clock, make_pm, connect, central, image):
    """Refused operations leave the VM untouched."""
    (pm,) = connect(make_pm())
    vm = deploy_vm(pm.allocate(ResourceVector(1, 1.0, MB)), image, central)
    with pytest.raises(VMStateError):
        vm.new_task(10)

    clock.simulate_until_last_event()
    with pytest.raises(VMStateError):
        vm.resume()

    vm.new_task(10)
    with pytest.raises(VMStateError):
        vm.shutdown()

    assert vm.state is VMState.RUNNING


def test_destroy_waits_for_tasks(clock, make_pm, connect, central, image):
    """Destroying without killing waits for the tasks to complete."""
    (pm,) = connect(make_pm())
    vm = deploy_vm(pm.allocate(ResourceVector(1, 1.0, MB)), image, central)
    clock.simulate_until_last_event()
    start = clock.current_tick
    task = vm.new_task(500, 1.0)
    assert vm.destroy(kill_tasks=False)
    assert vm.state is VMState.RUNNING
    clock.simulate_until_last_event()
    assert task.completed
    assert vm.state is VMState.DESTROYED
    assert clock.current_tick == start + 500 + 1
    assert pm.free == pm.capacity
    assert vm.image_copy_id not in pm.repository


def test_destroy_kills_tasks(clock, make_pm, connect, central, image):
    """Destroying cancels tasks and frees everything."""
    (pm,) = connect(make_pm())
    vm = deploy_vm(pm.allocate(ResourceVector(1, 1.0, MB)), image, central)
    clock.simulate_until_last_event()
    task = vm.new_task(500, 1.0)
    assert vm.destroy()
    assert task.cancelled
    assert not vm.destroy()
    assert pm.free == pm.capacity


def test_destroy_during_the_copy(clock, make_pm, connect, central, image):
    """A VM destroyed while copying its image leaves no copy."""
    (pm,) = connect(make_pm(bandwidth=100.0))
    vm = deploy_vm(pm.allocate(ResourceVector(1, 1.0, MB)), image, central)
    clock.defer(10, vm.destroy)
    clock.simulate_until_last_event()
    assert vm.state is VMState.DESTROYED
    assert pm.repository.reserved == 0
    assert vm.image_copy_id not in pm.repository


@pytest.mark.parametrize(
    "steps", [500, pytest.param(100_000, marks=pytest.mark.slow)]
)
def test_random_operations_stay_legal(
    clock, make_pm, connect, central, steps
):
    """Random operations only ever follow the allowed transitions."""
    image = VMImage("image", MB, boot_seconds=0.01)
    central.register_object(image.stored)
    machines = connect(make_pm(), make_pm())
    vm = deploy_vm(
        machines[0].allocate(ResourceVector(2, 1.0, MB)), image, central
    )
    seen = []
    vm.state_listeners.append(lambda vm, old, new: seen.append((old, new)))
    rng = random.Random(7)

    def allocation():
        pm = rng.choice(machines)
        if pm.can_allocate(ResourceVector(2, 1.0, MB)):
            return pm.allocate(ResourceVector(2, 1.0, MB), expiry=1)

        raise AllocationError("full")

    operations = {
        "deploy": lambda: vm.deploy(allocation(), central),
        "start": lambda: vm.start(allocation()),
        "task": lambda: vm.new_task(rng.randint(1, 3000), 1.0),
        "suspend": lambda: vm.suspend(),
        "resume": lambda: vm.resume(),
        "migrate": lambda: vm.migrate(rng.choice(machines)),
        "shutdown": lambda: vm.shutdown(),
        "destroy": lambda: vm.destroy(kill_tasks=rng.random() < 0.5),
    }
    for _ in range(steps):
        name = rng.choice(sorted(operations))
        before = vm.state
        try:
            operations[name]()
        except (MachineError, TransferError):
            assert vm.state is before

        clock.simulate_until(clock.current_tick + rng.randint(0, 50))
        for pm in machines:
            assert pm.allocated.fits(pm.capacity)

    assert seen
    for old, new in seen:
        assert new in TRANSITIONS[old]
