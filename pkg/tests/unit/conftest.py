import pytest

from clock import SimClock
from harness import Scenario
from iaas import IaaSService
from machines import (
    PMState,
    ResourceVector,
    build_machine,
    instant_profile,
)
from network import NetworkNode, Repository
from sharing import SharingKernel

GB = 1_000_000_000


@pytest.fixture(scope="function")
def clock():
    return SimClock(tick_seconds=0.001)


@pytest.fixture(scope="function")
def kernel(clock):
    return SharingKernel(clock)


@pytest.fixture(scope="function")
def make_pm(kernel):
    """Return a factory of machines, running by default.

    Machines process one unit per core and per tick, so that task
    lengths in ticks are easy to compute.

    """
    created = []

    def factory(
        cores=4,
        memory=16 * GB,
        bandwidth=1_000_000.0,
        disk=1000 * GB,
        profile=None,
        state=PMState.RUNNING,
        disk_bandwidth=None,
    ):
        pm = build_machine(
            kernel,
            f"pm-{len(created) + 1}",
            ResourceVector(cores, 1.0, memory),
            bandwidth,
            disk,
            profile=profile if profile is not None else instant_profile(),
            disk_bandwidth=disk_bandwidth,
            state=state,
        )
        created.append(pm)
        return pm

    return factory


@pytest.fixture(scope="function")
def central(kernel):
    """A central repository with a fast link."""
    node = NetworkNode(kernel, "central", 10_000_000.0, 10_000_000.0)
    return Repository("central", 10_000 * GB, node)


@pytest.fixture(scope="function")
def make_cloud(kernel, central, make_pm):
    """Return a factory of clouds with a central repository."""

    def factory(machines=1, cores=4, vm="first-fit-basic", pm=None, **kwargs):
        cloud = IaaSService(
            kernel, vm_scheduler=vm, pm_scheduler=pm or "pm-always-on"
        )
        cloud.register_repository(central)
        for _ in range(machines):
            cloud.register_pm(make_pm(cores=cores, **kwargs))

        return cloud

    return factory


@pytest.fixture(scope="function")
def small_scenario():
    """Return a factory of one-machine scenarios.

    The image is copied in one tick and boots instantly, so that jobs
    start one tick after their VMs are placed.

    """

    def factory(**sections):
        content = {
            "name": "small",
            "machines": [{"count": 1, "cores": 4, "profile": "instant"}],
            "image": {"size": 125_000, "boot_seconds": 0},
        }
        content.update(sections)
        return Scenario.parse_obj(content)

    return factory
