import pytest

from iaas import (
    DeregistrationRefused,
    IaaSError,
    IaaSService,
    RequestRejected,
    RequestState,
)
from machines import PMState, ResourceVector, VMImage, VMState

MB = 1_000_000


@pytest.fixture
def image(central):
    image = VMImage("image", MB, boot_seconds=0.5)
    central.register_object(image.stored)
    return image


def test_request_runs_a_vm(clock, make_cloud, image):
    """A request on an idle machine ends with a running VM."""
    cloud = make_cloud()
    request = cloud.request_vms(image, ResourceVector(2, 1.0, MB))
    (vm,) = request.vms
    assert vm.state is VMState.DESTROYED
    clock.simulate_until_last_event()
    assert request.state is RequestState.DISPATCHED
    assert vm.is_running
    assert vm.host is cloud.machines[0]


def test_infeasible_requests(make_cloud, image):
    """Requests no machine could ever hold are rejected right away."""
    cloud = make_cloud(cores=4)
    with pytest.raises(RequestRejected) as error:
        cloud.request_vms(image, ResourceVector(8, 1.0, MB))

    assert "8 cores" in error.value.reason
    with pytest.raises(ValueError):
        cloud.request_vms(image, ResourceVector(1, 1.0, MB), count=0)

    with pytest.raises(RequestRejected):
        cloud.request_vms(VMImage("missing", MB), ResourceVector(1, 1.0, MB))

    assert cloud.queue == []


def test_no_machine(kernel, image):
    """A service without machines rejects every request."""
    cloud = IaaSService(kernel)
    with pytest.raises(RequestRejected):
        cloud.request_vms(image, ResourceVector(1, 1.0, MB))


def test_off_machines_count_for_feasibility(make_cloud, image):
    """Switched off machines can still make a request feasible."""
    cloud = make_cloud(state=PMState.OFF, pm="pm-on-demand")
    request = cloud.request_vms(image, ResourceVector(4, 1.0, MB))
    assert request.state is RequestState.QUEUED


def test_requests_are_atomic(clock, make_cloud, make_pm, image):
    """Three VMs on a cloud holding two wait for a third machine."""
    cloud = make_cloud(machines=2, cores=1)
    request = cloud.request_vms(image, ResourceVector(1, 1.0, MB), count=3)
    clock.simulate_until_last_event()
    assert request.state is RequestState.QUEUED
    assert all(pm.idle for pm in cloud.machines)

    cloud.register_pm(make_pm(cores=1))
    clock.simulate_until_last_event()
    assert request.state is RequestState.DISPATCHED
    assert all(vm.is_running for vm in request.vms)


def test_terminate_a_queued_request(clock, make_cloud, image):
    """Terminating a VM of a queued request cancels the request."""
    cloud = make_cloud(cores=1)
    cloud.request_vms(image, ResourceVector(1, 1.0, MB))
    queued = cloud.request_vms(image, ResourceVector(1, 1.0, MB), count=2)
    clock.simulate_until_last_event()
    cloud.terminate_vm(queued.vms[1])
    assert queued.state is RequestState.CANCELLED
    assert queued not in cloud.queue
    with pytest.raises(IaaSError):
        cloud.terminate_vm(queued.vms[0])


def test_reallocate(clock, make_cloud, image):
    """Down-scaling frees cores; up-scaling a full host fails."""
    cloud = make_cloud(cores=8)
    request = cloud.request_vms(image, ResourceVector(8, 1.0, MB))
    clock.simulate_until_last_event()
    (vm,) = request.vms
    pm = vm.host
    assert cloud.reallocate_vm(vm, ResourceVector(4, 1.0, MB))
    assert pm.free.cores == 4
    assert vm.cpu_consumer.per_tick_processing == 4

    other = cloud.request_vms(image, ResourceVector(4, 1.0, MB))
    clock.simulate_until_last_event()
    assert other.state is RequestState.DISPATCHED
    assert not cloud.reallocate_vm(vm, ResourceVector(6, 1.0, MB))
    assert vm.resources.cores == 4
    assert vm.is_running


def test_query_state(clock, make_cloud, image):
    """Snapshots add up the registered machines."""
    cloud = make_cloud(machines=3, pm="pm-on-demand", state=PMState.OFF)
    state = cloud.query_state()
    assert state.total_machines == 3
    assert state.running_machines == 0
    assert state.total_cores == 12
    assert state.running_cores == 0
    assert state.vm_scheduler == "first-fit-basic"
    assert state.pm_scheduler == "pm-on-demand"

    cloud.machines[0].turn_on()
    state = cloud.query_state()
    assert state.running_ratio == pytest.approx(1 / 3)
    assert state.running_processing == 4
    assert state.machines == ("pm-1", "pm-2", "pm-3")


def test_fresh_service(kernel):
    """A fresh service has nothing."""
    state = IaaSService(kernel).query_state()
    assert state.total_machines == 0
    assert state.total_processing == 0
    assert state.hosted_vms == 0
    assert state.queue_length == 0
    assert state.running_ratio == 0


def test_queue_length(clock, make_cloud, image):
    """Requests wait in the queue of a saturated cloud."""
    cloud = make_cloud(cores=4)
    cloud.request_vms(image, ResourceVector(4, 1.0, MB))
    for _ in range(5):
        cloud.request_vms(image, ResourceVector(1, 1.0, MB))

    clock.simulate_until_last_event()
    state = cloud.query_state()
    assert state.queue_length == 5
    assert state.hosted_vms == 1


def test_vm_state_events(clock, make_cloud, image):
    """Each VM state change is sent once."""
    cloud = make_cloud()
    events = []
    cloud.subscribe("vm-state", events.append)
    request = cloud.request_vms(image, ResourceVector(1, 1.0, MB))
    clock.simulate_until_last_event()
    running = [e for e in events if e.data["new"] is VMState.RUNNING]
    assert len(running) == 1
    assert running[0].subject is request.vms[0]
    assert running[0].data["old"] is VMState.STARTUP


def test_capacity_events(clock, make_cloud):
    """Switching a machine on adds its capacity."""
    cloud = make_cloud(state=PMState.OFF)
    events = []
    cloud.subscribe("capacity-change", events.append)
    clock.simulate_until_last_event()
    assert [e.data["delta"] for e in events] == [4]
    assert events[0].data["running"]


def test_queue_events(clock, make_cloud, image):
    """The queue changes when requests arrive and when they are served."""
    cloud = make_cloud()
    events = []
    cloud.subscribe("queue-change", events.append)
    request = cloud.request_vms(image, ResourceVector(1, 1.0, MB))
    clock.simulate_until_last_event()
    assert [e.data["queued"] for e in events] == [True, False]
    assert all(e.subject is request for e in events)


def test_room_freed_while_serving(clock, make_cloud, image):
    """Room freed while a request is served is used in the same tick."""
    cloud = make_cloud(cores=4, vm="first-fit-nonqueuing")
    old = cloud.request_vms(image, ResourceVector(2, 1.0, MB))
    clock.simulate_until_last_event()
    later = []

    def on_queue(event):
        if event.data["queued"] or later or event.subject is not first:
            return

        cloud.terminate_vm(old.vms[0])
        later.append(cloud.request_vms(image, ResourceVector(2, 1.0, MB)))

    cloud.subscribe("queue-change", on_queue)
    first = cloud.request_vms(image, ResourceVector(2, 1.0, MB))
    clock.simulate_until_last_event()
    (second,) = later
    assert first.state is RequestState.DISPATCHED
    assert second.state is RequestState.DISPATCHED
    assert second.dispatch_tick == first.dispatch_tick
    assert cloud.queue == []


def test_partial_placement_leaves_the_queue_blocked(
    clock, make_cloud, make_pm, image
):
    """A request fitting only in part waits without looping the tick."""
    cloud = make_cloud(cores=2)
    releases = []
    cloud.subscribe("allocation-release", releases.append)
    request = cloud.request_vms(image, ResourceVector(2, 1.0, MB), count=2)
    clock.simulate_until(clock.current_tick + 1000)
    assert request.state is RequestState.QUEUED
    assert releases
    assert all(vm.state is VMState.DESTROYED for vm in request.vms)

    cloud.register_pm(make_pm(cores=2))
    clock.simulate_until_last_event()
    assert request.state is RequestState.DISPATCHED


def test_unknown_event_kind(make_cloud):
    """Only known kinds of events can be subscribed to."""
    with pytest.raises(ValueError):
        make_cloud().subscribe("weather", print)


def test_deregister_busy_machine(clock, make_cloud, image):
    """A machine hosting VMs is only deregistered by force."""
    cloud = make_cloud(cores=4)
    request = cloud.request_vms(image, ResourceVector(1, 1.0, MB), count=3)
    clock.simulate_until_last_event()
    pm = cloud.machines[0]
    with pytest.raises(DeregistrationRefused):
        cloud.deregister_pm(pm)

    destroyed = []

    def on_state(event):
        if event.data["new"] is VMState.DESTROYED:
            destroyed.append(event.subject)

    cloud.subscribe("vm-state", on_state)
    cloud.deregister_pm(pm, forcible=True)
    assert destroyed == request.vms
    assert cloud.machines == []
    assert pm.idle


def test_deregister_repository_in_use(clock, kernel, make_pm, central, image):
    """A repository holding the images of VMs can't be removed."""
    cloud = IaaSService(kernel, image_hosting="central")
    cloud.register_repository(central)
    cloud.register_pm(make_pm())
    cloud.request_vms(image, ResourceVector(1, 1.0, MB))
    clock.simulate_until_last_event()
    with pytest.raises(DeregistrationRefused):
        cloud.deregister_repository(central)


def test_poll(clock, make_cloud):
    """Polling sends a snapshot every period."""
    cloud = make_cloud(machines=2)
    snapshots = []
    subscription = cloud.poll(snapshots.append, 100)
    clock.simulate_until(1000)
    subscription.cancel()
    assert len(snapshots) == 9
    assert all(s.running_machines == 2 for s in snapshots)


def test_cross_service_migration(clock, kernel, make_pm, central, image):
    """A VM migrated to another cloud is handed over to it."""
    first = IaaSService(kernel, name="first")
    second = IaaSService(kernel, name="second")
    for cloud in (first, second):
        cloud.register_repository(central)
        cloud.register_pm(make_pm())

    first.connect(second, 5)
    request = first.request_vms(image, ResourceVector(1, 1.0, MB))
    clock.simulate_until_last_event()
    (vm,) = request.vms
    events = []
    second.subscribe("vm-state", events.append)
    first.migrate_vm(vm, second.machines[0])
    clock.simulate_until_last_event()
    assert vm.host is second.machines[0]
    assert vm.is_running
    assert vm.id in second.vms
    assert vm.id not in first.vms
    assert events[-1].data["new"] is VMState.RUNNING
