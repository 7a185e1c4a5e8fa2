from behave import given, then, when
from hamcrest import assert_that, equal_to, has_length

from iaas import IaaSService, RequestState
from machines import PMState, ResourceVector, build_machine, instant_profile

GB = 1_000_000_000
MB = 1_000_000


@given("a cloud using {vm} and {pm}")
def step_impl(context, vm, pm):
    cloud = IaaSService(context.kernel, vm_scheduler=vm, pm_scheduler=pm)
    cloud.register_repository(context.central)
    context.cloud = cloud


@given("{count:d} {state} machine(s) of {cores:d} cores")
def step_impl(context, count, state, cores):
    cloud = context.cloud
    for _ in range(count):
        pm = build_machine(
            context.kernel,
            f"pm-{len(cloud.machines) + 1}",
            ResourceVector(cores, 1.0, 16 * GB),
            1_000_000.0,
            1000 * GB,
            profile=instant_profile(),
            state=PMState[state.upper()],
        )
        cloud.register_pm(pm)


@given("a grace of {seconds:d} seconds")
def step_impl(context, seconds):
    scheduler = context.cloud.pm_scheduler
    scheduler.grace = context.clock.to_ticks(seconds)


@when("a request '{name}' for {cores:d} core(s) arrives")
def step_impl(context, name, cores):
    resources = ResourceVector(cores, 1.0, MB)
    request = context.cloud.request_vms(context.image, resources)
    context.requests[name] = request


@when("a request '{name}' for {count:d} VMs of {cores:d} cores arrives")
def step_impl(context, name, count, cores):
    resources = ResourceVector(cores, 1.0, MB)
    request = context.cloud.request_vms(context.image, resources, count=count)
    context.requests[name] = request


@when("the simulation runs")
def step_impl(context):
    context.clock.simulate_until_last_event()


@when("the VMs of '{name}' are terminated")
def step_impl(context, name):
    for vm in context.requests[name].vms:
        context.cloud.terminate_vm(vm)


@then("the request '{name}' is {state}")
def step_impl(context, name, state):
    request = context.requests[name]
    assert_that(request.state, equal_to(RequestState[state.upper()]))


@then("the VMs of '{name}' are running")
def step_impl(context, name):
    running = [vm.is_running for vm in context.requests[name].vms]
    assert_that(running, equal_to([True] * len(running)))


@then("the queue holds {count:d} request(s)")
def step_impl(context, count):
    assert_that(context.cloud.queue, has_length(count))


@then("{count:d} machine(s) are running")
def step_impl(context, count):
    running = [pm for pm in context.cloud.machines if pm.is_running]
    assert_that(running, has_length(count))
