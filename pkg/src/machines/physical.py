# Copyright (c) 2023, LE GOFF Vincent
# All rights reserved.

# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are met:

# 1. Redistributions of source code must retain the above copyright notice,
#    this list of conditions and the following disclaimer.

# 2. Redistributions in binary form must reproduce the above copyright notice,
#    this list of conditions and the following disclaimer in the documentation
#    and/or other materials provided with the distribution.

# 3. Neither the name of the copyright holder nor the names of its
#    contributors may be used to endorse or promote products derived from
#    this software without specific prior written permission.

# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
# AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
# IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
# ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS
# BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY,
# OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
# SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
# INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
# CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
# ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED
# OF THE POSSIBILITY OF SUCH DAMAGE.

"""Physical machines."""

from itertools import count
from typing import Callable, TYPE_CHECKING

from energy.model import ConstantModel
from energy.power import PowerState
from machines.allocation import ResourceAllocation
from machines.errors import AllocationError, PowerStateError, UnfitRequest
from machines.hidden import HiddenScript
from machines.profiles import PMState, PowerProfile, simplified_profile
from machines.resources import ResourceVector
from network.node import NetworkNode
from network.repository import Repository
from tools.logging.sim import SimLogger
from tools.settings import settings

if TYPE_CHECKING:
    from machines.virtual import VirtualMachine
    from sharing.kernel import SharingKernel

logger = SimLogger("machines")
logger.setup()

# Network ports and disks draw nothing unless given a state of their own.
PORT_STATE = PowerState("port", ConstantModel(0.0), 1.0)


class PhysicalMachine:

    """A physical machine, hosting virtual machines.

    The machine owns a CPU provider spreader (all its cores), a hidden
    consumer running the machine's own tasks, a network node and a
    local repository.  Its power state decides how much of the CPU can
    be used: nothing while off or (in the simplified profile) while
    switching.

    A script the profile gives to the running state keeps the hidden
    consumer busy for as long as the machine runs.

    Resources are handed out as allocations; a machine can only be
    switched off once every allocation is released.

    """

    _ids = count(1)

    def __init__(
        self,
        kernel: "SharingKernel",
        name: str,
        capacity: ResourceVector,
        node: NetworkNode,
        repository: Repository,
        profile: PowerProfile | None = None,
        strict: bool | None = None,
        state: PMState = PMState.OFF,
    ):
        capacity.require()
        self.id = next(type(self)._ids)
        self.name = name
        self.kernel = kernel
        self.clock = kernel.clock
        self.capacity = capacity
        self.node = node
        self.repository = repository
        self.profile = profile if profile is not None else simplified_profile()
        if strict is None:
            strict = settings.STRICT_ALLOCATIONS

        self.strict = strict
        self.cpu_provider = kernel.provider(capacity.processing, f"{name}-cpu")
        self.hidden_consumer = kernel.consumer(
            capacity.processing, f"{name}-hidden"
        )
        self.allocations: dict[int, ResourceAllocation] = {}
        self.allocated = ResourceVector(0, capacity.per_core_processing, 0)
        self.state = state
        self.state_listeners: list[
            Callable[["PhysicalMachine", PMState, PMState], object]
        ] = []
        self.free_listeners: list[Callable[["PhysicalMachine"], object]] = []
        self._transition: HiddenScript | object | None = None
        self._next: PMState | None = None
        self._steady: HiddenScript | None = None
        self.owner = None
        power = self.profile.power_state(state)
        self.cpu_provider.set_power_state(power, power.processing_factor)
        self._start_steady()
        for port in self.ports:
            if port.power_state is None:
                port.power_state = PORT_STATE

    def __repr__(self):
        return f"<PhysicalMachine {self.name} {self.state.value}>"

    @property
    def ports(self) -> list:
        """Network and disk spreaders of the machine."""
        spreaders = [self.node.inbound, self.node.outbound]
        repository = self.repository
        if repository.disk_in is not None:
            spreaders += [repository.disk_in, repository.disk_out]

        return spreaders

    @property
    def is_running(self) -> bool:
        return self.state is PMState.RUNNING

    @property
    def free(self) -> ResourceVector:
        """Resources not allocated."""
        return self.capacity - self.allocated

    @property
    def hosted_vms(self) -> list["VirtualMachine"]:
        """VMs bound to an allocation of this machine, by id."""
        vms = [alloc.vm for alloc in self.allocations.values() if alloc.vm]
        return sorted(vms, key=lambda vm: vm.id)

    @property
    def idle(self) -> bool:
        """Whether the machine holds no allocation at all."""
        return not self.allocations

    def turn_on(self) -> bool:
        """Switch the machine on.

        A machine switching off is switched back on once off.

        Returns:
            accepted (bool): `False` if the machine is already running
                    or switching on.

        """
        match self.state:
            case PMState.RUNNING | PMState.SWITCHING_ON:
                self._next = None
                return False
            case PMState.SWITCHING_OFF:
                self._next = PMState.RUNNING
            case PMState.OFF:
                self._begin(PMState.SWITCHING_ON, PMState.RUNNING)

        return True

    def switch_off(self) -> bool:
        """Switch the machine off.

        A machine switching on is switched off once running.

        Returns:
            accepted (bool): `False` if the machine is already off or
                    switching off.

        Raises:
            PowerStateError: the machine still holds allocations.

        """
        if self.allocations:
            raise PowerStateError(
                f"{self.name} can't be switched off: it holds "
                f"{len(self.allocations)} allocation(s)"
            )

        match self.state:
            case PMState.OFF | PMState.SWITCHING_OFF:
                self._next = None
                return False
            case PMState.SWITCHING_ON:
                self._next = PMState.OFF
            case PMState.RUNNING:
                self._begin(PMState.SWITCHING_OFF, PMState.OFF)

        return True

    def fits(self, request: ResourceVector) -> bool:
        """Return whether the request fits the total capacity."""
        return request.fits(self.capacity)

    def can_allocate(self, request: ResourceVector) -> bool:
        """Return whether an exact allocation would be granted now."""
        return self.is_running and request.fits(self.free)

    def allocate(
        self,
        request: ResourceVector,
        strict: bool | None = None,
        expiry: int | None = None,
    ) -> ResourceAllocation | None:
        """Reserve resources on this machine.

        Args:
            request (ResourceVector): the resources wanted.
            strict (bool, optional): if `False`, a request that doesn't
                    fit is down-sized to what is free.  By default,
                    the machine's setting.
            expiry (int, optional): ticks before an unused allocation
                    expires.  By default, the configured delay.

        Returns:
            allocation (ResourceAllocation or None): the allocation,
                    `None` if the resources aren't free.

        Raises:
            UnfitRequest: the request exceeds the machine's capacity.
            AllocationError: the machine isn't running.

        """
        request.require()
        if not self.fits(request):
            raise UnfitRequest(
                f"{self.name} ({self.capacity}) can never hold {request}"
            )

        if not self.is_running:
            raise AllocationError(f"{self.name} isn't running")

        if strict is None:
            strict = self.strict

        if not request.fits(free := self.free):
            if strict:
                return None

            request = request.clip(free)
            if request.empty:
                return None

        if expiry is None:
            expiry = self.clock.to_ticks(settings.ALLOCATION_EXPIRY_SECONDS)

        allocation = ResourceAllocation(self, request, max(1, expiry))
        self.allocations[allocation.id] = allocation
        self.allocated = self.allocated + request
        logger.debug(f"{self.name}: allocated {request}")
        return allocation

    def resize(
        self, allocation: ResourceAllocation, resources: ResourceVector
    ) -> bool:
        """Change the resources of an allocation, all or nothing.

        Returns:
            resized (bool): `False` if the machine can't hold the new
                    resources, in which case nothing changes.

        """
        resources.require()
        if allocation.id not in self.allocations or not self.is_running:
            return False

        available = self.free + allocation.resources
        if not resources.fits(available):
            return False

        freed = not allocation.resources.fits(resources)
        self.allocated = self.allocated - allocation.resources + resources
        allocation.resources = resources
        if freed:
            self._freed()

        return True

    def free_allocation(self, allocation: ResourceAllocation) -> None:
        """Forget a released allocation.  Called by the allocation."""
        if self.allocations.pop(allocation.id, None) is not None:
            self.allocated = self.allocated - allocation.resources
            self._freed()

    def _freed(self) -> None:
        for listener in tuple(self.free_listeners):
            listener(self)

    def _begin(self, transition: PMState, target: PMState) -> None:
        def done():
            self._transition = None
            self._enter(target)
            then, self._next = self._next, None
            if then is PMState.RUNNING:
                self.turn_on()
            elif then is PMState.OFF and not self.allocations:
                self.switch_off()

        self._enter(transition)
        if script := self.profile.script(transition):
            runner = HiddenScript(self, script, done)
            self._transition = runner
            runner.start()
        elif ticks := self.clock.to_ticks(self.profile.duration(transition)):
            self._transition = self.clock.defer(ticks, done)
        else:
            done()

    def _enter(self, state: PMState) -> None:
        if self._steady is not None:
            self._steady.cancel()
            self._steady = None

        old, self.state = self.state, state
        power = self.profile.power_state(state)
        self.cpu_provider.set_power_state(power, power.processing_factor)
        logger.debug(f"{self.name}: {old.value} -> {state.value}")
        self._start_steady()
        for listener in tuple(self.state_listeners):
            listener(self, old, state)

    def _start_steady(self) -> None:
        if self.state.transitional:
            return

        if script := self.profile.script(self.state):
            self._steady = HiddenScript(self, script, repeat=True)
            self._steady.start()


def build_machine(
    kernel: "SharingKernel",
    name: str,
    capacity: ResourceVector,
    bandwidth: float,
    disk_capacity: int,
    profile: PowerProfile | None = None,
    disk_bandwidth: float | None = None,
    state: PMState = PMState.OFF,
    strict: bool | None = None,
) -> PhysicalMachine:
    """Create a machine with its own network node and repository.

    Args:
        kernel (SharingKernel): the kernel of the simulation.
        name (str): the machine name, also used for its node.
        capacity (ResourceVector): the machine's resources.
        bandwidth (float): the in and out bandwidth, per tick.
        disk_capacity (int): the size of the local repository.
        profile (PowerProfile, optional): the power profile.
        disk_bandwidth (float, optional): the local disk bandwidth,
                per tick.  Local copies go through the network ports
                if not set.
        state (PMState, optional): the initial state.
        strict (bool, optional): the allocation mode.

    """
    node = NetworkNode(kernel, name, bandwidth, bandwidth)
    repository = Repository(
        f"{name}-disk", disk_capacity, node, disk_bandwidth
    )
    return PhysicalMachine(
        kernel, name, capacity, node, repository, profile, strict, state
    )
