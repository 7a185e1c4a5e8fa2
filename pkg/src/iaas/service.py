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

"""The IaaS service, front of a simulated cloud."""

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, TYPE_CHECKING

from iaas.errors import DeregistrationRefused, IaaSError, RequestRejected
from iaas.events import EventChannels, EventSubscription
from iaas.log import logger
from iaas.pm_scheduler import PM_SCHEDULERS
from iaas.request import RequestState, VMRequest
from iaas.vm_scheduler import VM_SCHEDULERS
from machines.allocation import ResourceAllocation
from machines.physical import PhysicalMachine
from machines.profiles import PMState
from machines.resources import ResourceVector
from machines.virtual import VMImage, VMState, VirtualMachine
from network.node import set_latency
from network.repository import Repository, lookup
from tools.settings import settings

if TYPE_CHECKING:
    from clock import Subscription
    from sharing.kernel import SharingKernel


@dataclass(frozen=True)
class ServiceState:

    """A snapshot of a service."""

    tick: int
    total_machines: int
    running_machines: int
    hosted_vms: int
    total_cores: int
    total_processing: float
    total_memory: int
    running_cores: int
    running_processing: float
    running_memory: int
    machines: tuple[str, ...]
    queue_length: int
    vm_scheduler: str
    pm_scheduler: str

    @property
    def running_ratio(self) -> float:
        """Running machines over registered machines."""
        if not self.total_machines:
            return 0.0

        return self.running_machines / self.total_machines


class IaaSService:

    """A cloud: machines, repositories, a VM queue and two schedulers.

    The VM scheduler places queued requests; the PM scheduler powers
    machines on and off.  Both are called by the clock's flush, once
    per tick at most, after something relevant changed.

    Args:
        kernel (SharingKernel): the kernel of the simulation.
        vm_scheduler (str, optional): the VM scheduler name.
        pm_scheduler (str, optional): the PM scheduler name.
        image_hosting (str, optional): "local" to copy images to the
                machine's disk, "central" to keep VM images in the
                repository they come from.
        latency (int, optional): ticks of latency between the nodes of
                the service, set when machines and repositories are
                registered (explicit latencies are kept).
        name (str, optional): a name for logs.

    """

    def __init__(
        self,
        kernel: "SharingKernel",
        vm_scheduler: str | None = None,
        pm_scheduler: str | None = None,
        image_hosting: str | None = None,
        latency: int = 0,
        name: str = "cloud",
    ):
        self.kernel = kernel
        self.clock = kernel.clock
        self.name = name
        self.latency = latency
        self.image_hosting = image_hosting or settings.IMAGE_HOSTING
        if self.image_hosting not in ("local", "central"):
            raise ValueError(f"unknown image hosting: {self.image_hosting!r}")

        self.machines: list[PhysicalMachine] = []
        self.repositories: list[Repository] = []
        self.queue: list[VMRequest] = []
        self.vms: dict[int, VirtualMachine] = {}
        self.requests: dict[int, VMRequest] = {}
        self.events = EventChannels(self.clock)
        self.vm_scheduler = self._build(
            VM_SCHEDULERS, vm_scheduler or settings.VM_SCHEDULER
        )
        self.pm_scheduler = self._build(
            PM_SCHEDULERS, pm_scheduler or settings.PM_SCHEDULER
        )
        self._dispatch_pending = False
        self._react_pending = False
        self._rollbacks = 0
        self.clock.add_flush_hook(self.flush)

    def __repr__(self):
        return (
            f"<IaaSService {self.name} machines={len(self.machines)} "
            f"queue={len(self.queue)}>"
        )

    def _build(self, registry: dict, name: str):
        try:
            cls = registry[name]
        except KeyError:
            raise ValueError(f"unknown scheduler: {name!r}") from None

        return cls(self)

    # Infrastructure

    def register_pm(self, pm: PhysicalMachine) -> None:
        """Add a machine to the cloud.

        Raises:
            IaaSError: the machine is already registered.

        """
        if pm in self.machines:
            raise IaaSError(f"{pm.name} is already registered")

        for other in self.machines:
            self._connect(pm.node, other.node)

        for repository in self.repositories:
            self._connect(pm.node, repository.node)

        self.machines.append(pm)
        pm.owner = self
        pm.state_listeners.append(self._machine_changed)
        pm.free_listeners.append(self._machine_freed)
        self.events.emit(
            "capacity-change",
            pm,
            registered=True,
            delta=pm.capacity.processing,
            running=pm.is_running,
        )
        self.request_dispatch()
        self.request_reaction()

    def deregister_pm(self, pm: PhysicalMachine, forcible: bool = False):
        """Remove a machine.

        Args:
            pm (PhysicalMachine): the machine.
            forcible (bool, optional): destroy the VMs it hosts (without
                    migrating them) and drop its allocations.

        Raises:
            DeregistrationRefused: the machine hosts VMs or holds
                    allocations and `forcible` is `False`.
            IaaSError: the machine isn't registered.

        """
        if pm not in self.machines:
            raise IaaSError(f"{pm.name} isn't registered")

        if pm.allocations and not forcible:
            raise DeregistrationRefused(
                f"{pm.name} still hosts {len(pm.hosted_vms)} VM(s)"
            )

        for vm in pm.hosted_vms:
            vm.destroy()

        for allocation in list(pm.allocations.values()):
            allocation.release()

        self.machines.remove(pm)
        pm.owner = None
        pm.state_listeners.remove(self._machine_changed)
        pm.free_listeners.remove(self._machine_freed)
        self.events.emit(
            "capacity-change",
            pm,
            registered=False,
            delta=-pm.capacity.processing,
            running=pm.is_running,
        )
        self.request_reaction()

    def register_repository(self, repository: Repository) -> None:
        """Add a repository, connecting it to every machine."""
        if repository in self.repositories:
            raise IaaSError(f"{repository.name} is already registered")

        for pm in self.machines:
            self._connect(pm.node, repository.node)

        self.repositories.append(repository)

    def deregister_repository(self, repository: Repository) -> None:
        """Remove a repository.

        Raises:
            DeregistrationRefused: a VM of the service keeps its image
                    in this repository.

        """
        if any(vm.hosting is repository for vm in self.vms.values()):
            raise DeregistrationRefused(
                f"{repository.name} holds images of running VMs"
            )

        if repository in self.repositories:
            self.repositories.remove(repository)

    def connect(self, other: "IaaSService", latency: int) -> None:
        """Connect every node of this service to those of another."""
        mine = [pm.node for pm in self.machines]
        mine += [repository.node for repository in self.repositories]
        theirs = [pm.node for pm in other.machines]
        theirs += [repository.node for repository in other.repositories]
        for node in mine:
            for remote in theirs:
                set_latency(node, remote, latency)
                set_latency(remote, node, latency)

    def _connect(self, node, other) -> None:
        if node is other:
            return

        if node.latency_to(other) is None:
            set_latency(node, other, self.latency)

        if other.latency_to(node) is None:
            set_latency(other, node, self.latency)

    def hosting_for(
        self, allocation: ResourceAllocation, source: Repository
    ) -> Repository:
        """Return where the image copy of a VM is kept."""
        if self.image_hosting == "central":
            return source

        return allocation.host.repository

    # Requests

    def request_vms(
        self,
        image: VMImage,
        resources: ResourceVector,
        count: int = 1,
    ) -> VMRequest:
        """Queue a request for `count` VMs.

        Args:
            image (VMImage): the image, found in a registered repository.
            resources (ResourceVector): the resources of each VM.
            count (int, optional): the number of VMs, started together.

        Returns:
            request (VMRequest): the request, with its VMs.

        Raises:
            ValueError: the count isn't positive or the resources are
                    empty.
            RequestRejected: no machine could ever hold a VM of this
                    size (switched off machines included), or the image
                    can't be found.

        """
        if count < 1:
            raise ValueError(f"a request needs at least one VM, not {count}")

        resources.require()
        if not self.machines:
            raise RequestRejected("no machine is registered")

        if not any(pm.fits(resources) for pm in self.machines):
            raise RequestRejected(
                f"no machine can hold {resources}, even empty"
            )

        if not (sources := lookup(self.repositories, image.id)):
            raise RequestRejected(
                f"image {image.id!r} isn't in any repository"
            )

        vms = [
            VirtualMachine(self.kernel, image, resources) for _ in range(count)
        ]
        request = VMRequest(
            image, resources, vms, sources[0], self.clock.current_tick
        )
        for vm in vms:
            self.vms[vm.id] = vm
            self.requests[vm.id] = request
            vm.state_listeners.append(self._vm_changed)

        self.queue.append(request)
        logger.debug(f"request {request.id} queued ({count} VM(s))")
        self.events.emit("queue-change", request, queued=True)
        self.request_dispatch()
        self.request_reaction()
        return request

    def served(self, request: VMRequest) -> None:
        """Remove a placed request from the queue.  Used by schedulers."""
        self.queue.remove(request)
        request.state = RequestState.DISPATCHED
        request.dispatch_tick = self.clock.current_tick
        self.events.emit("queue-change", request, queued=False)

    def reject(self, request: VMRequest, reason: str) -> None:
        """Drop a request from the queue.  Used by schedulers."""
        if request in self.queue:
            self.queue.remove(request)

        request.state = RequestState.REJECTED
        request.reason = reason
        self._forget(request)
        logger.info(f"request {request.id} rejected: {reason}")
        self.events.emit(
            "queue-change", request, queued=False, rejected=reason
        )

    def terminate_vm(self, vm: VirtualMachine, kill_tasks: bool = True):
        """Destroy a VM of this service.

        Terminating a VM whose request is still queued cancels the
        whole request.

        Raises:
            IaaSError: the VM isn't owned by this service.

        """
        if (request := self.requests.get(vm.id)) is None:
            raise IaaSError(f"{vm!r} isn't owned by {self.name}")

        if request.state is RequestState.QUEUED:
            self.queue.remove(request)
            request.state = RequestState.CANCELLED
            self._forget(request)
            self.events.emit("queue-change", request, queued=False)
        else:
            vm.destroy(kill_tasks)

    def reallocate_vm(self, vm: VirtualMachine, resources: ResourceVector):
        """Change the resources of a running VM.

        Returns:
            reallocated (bool): whether the host could do it.

        """
        if vm.id not in self.vms:
            raise IaaSError(f"{vm!r} isn't owned by {self.name}")

        return vm.reallocate(resources)

    def migrate_vm(
        self,
        vm: VirtualMachine,
        target: PhysicalMachine,
        on_done: Callable[[VirtualMachine], object] | None = None,
    ) -> None:
        """Migrate a VM to a machine of this service or another one.

        When the target belongs to another service, the VM is handed
        over to it: its events are then emitted by the other service.

        Raises:
            IaaSError: the VM isn't owned by this service.
            MachineError, TransferError: see `VirtualMachine.migrate`.

        """
        if (request := self.requests.get(vm.id)) is None:
            raise IaaSError(f"{vm!r} isn't owned by {self.name}")

        vm.migrate(target, on_done)
        if (owner := target.owner) is not None and owner is not self:
            del self.vms[vm.id]
            del self.requests[vm.id]
            vm.state_listeners.remove(self._vm_changed)
            owner.adopt(vm, request)

    def adopt(self, vm: VirtualMachine, request: VMRequest) -> None:
        """Take over a VM migrated from another service."""
        self.vms[vm.id] = vm
        self.requests[vm.id] = request
        vm.state_listeners.append(self._vm_changed)

    def _forget(self, request: VMRequest) -> None:
        for vm in request.vms:
            self.vms.pop(vm.id, None)
            self.requests.pop(vm.id, None)
            if self._vm_changed in vm.state_listeners:
                vm.state_listeners.remove(self._vm_changed)

    # Queries

    def query_state(self) -> ServiceState:
        """Return a snapshot of the service."""
        running = [pm for pm in self.machines if pm.is_running]
        return ServiceState(
            tick=self.clock.current_tick,
            total_machines=len(self.machines),
            running_machines=len(running),
            hosted_vms=sum(len(pm.hosted_vms) for pm in self.machines),
            total_cores=sum(pm.capacity.cores for pm in self.machines),
            total_processing=sum(
                pm.capacity.processing for pm in self.machines
            ),
            total_memory=sum(pm.capacity.memory for pm in self.machines),
            running_cores=sum(pm.capacity.cores for pm in running),
            running_processing=sum(pm.capacity.processing for pm in running),
            running_memory=sum(pm.capacity.memory for pm in running),
            machines=tuple(pm.name for pm in self.machines),
            queue_length=len(self.queue),
            vm_scheduler=self.vm_scheduler.name,
            pm_scheduler=self.pm_scheduler.name,
        )

    def subscribe(self, kind: str, handler) -> EventSubscription:
        """Subscribe to events of a kind.

        Kinds are "vm-state", "capacity-change", "queue-change" and
        "allocation-release".  Handlers receive an `Event`.

        """
        return self.events.subscribe(kind, handler)

    def poll(
        self, handler: Callable[[ServiceState], object], period: int
    ) -> "Subscription":
        """Call `handler` with a snapshot every `period` ticks."""
        return self.clock.subscribe(
            lambda: handler(self.query_state()), period
        )

    # Scheduling

    def request_dispatch(self) -> None:
        """Have the VM scheduler called at the end of the tick."""
        self._dispatch_pending = True

    def request_reaction(self) -> None:
        """Have the PM scheduler called at the end of the tick."""
        self._react_pending = True

    @contextmanager
    def rolling_back(self):
        """Mark releases of allocations taken in the current pass.

        Releases inside the block give back nothing the scheduler
        didn't already see free, so they don't call for a dispatch.

        """
        self._rollbacks += 1
        try:
            yield
        finally:
            self._rollbacks -= 1

    def flush(self) -> bool:
        """Call the schedulers if needed.  A flush hook of the clock."""
        busy = False
        if self._dispatch_pending:
            self._dispatch_pending = False
            if self.queue:
                self.vm_scheduler.dispatch()
                busy = True

        if self._react_pending:
            self._react_pending = False
            self.pm_scheduler.react()
            busy = True

        return busy

    def _machine_changed(self, pm, old: PMState, new: PMState) -> None:
        if PMState.RUNNING in (old, new):
            delta = pm.capacity.processing
            self.events.emit(
                "capacity-change",
                pm,
                delta=delta if new is PMState.RUNNING else -delta,
                running=new is PMState.RUNNING,
            )

        if new is PMState.RUNNING:
            self.request_dispatch()

        self.request_reaction()

    def _machine_freed(self, pm: PhysicalMachine) -> None:
        self.events.emit("allocation-release", pm)
        if not self._rollbacks:
            self.request_dispatch()

        self.request_reaction()

    def _vm_changed(self, vm, old: VMState, new: VMState) -> None:
        self.events.emit("vm-state", vm, old=old, new=new)
        if new is VMState.DESTROYED:
            self.vms.pop(vm.id, None)
            self.requests.pop(vm.id, None)
            vm.state_listeners.remove(self._vm_changed)
            self.request_reaction()
