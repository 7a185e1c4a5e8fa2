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

"""Virtual machines.

A VM goes through the following states:

    destroyed -> initial-transfer -> shutdown -> startup -> running
    running -> suspend-transfer -> suspended -> resume-transfer -> running
    suspended -> migrating -> resume-transfer (on another machine)
    running -> shutdown (graceful, without tasks)
    any state -> destroyed

Any other transition is refused with a `VMStateError` and the VM
doesn't change.  Each state change is sent to the VM's state listeners.

```python
vm = deploy_vm(allocation, image, central_repository)
# ... once running
vm.new_task(10_000, pm.capacity.per_core_processing)
```

"""

from dataclasses import dataclass
from enum import Enum
from functools import partial
from itertools import count
import math
from typing import Callable, TYPE_CHECKING

from machines.allocation import ResourceAllocation
from machines.errors import AllocationError, VMStateError
from machines.resources import ResourceVector
from network.errors import InsufficientSpace, Unconnected
from network.repository import StorageObject
from network.transfer import (
    Transfer,
    TransferState,
    initiate_transfer,
    load_local,
    store_local,
)
from sharing.consumption import ConsumptionState, ResourceConsumption
from tools.logging.sim import SimLogger
from tools.settings import settings

if TYPE_CHECKING:
    from machines.physical import PhysicalMachine
    from network.repository import Repository
    from sharing.kernel import SharingKernel

logger = SimLogger("vm")
logger.setup()

OnDone = Callable[["VirtualMachine"], object] | None


class VMState(Enum):

    """State of a virtual machine."""

    DESTROYED = "destroyed"
    INITIAL_TRANSFER = "initial-transfer"
    SHUTDOWN = "shutdown"
    STARTUP = "startup"
    RUNNING = "running"
    SUSPEND_TRANSFER = "suspend-transfer"
    MIGRATING = "migrating"
    SUSPENDED = "suspended"
    RESUME_TRANSFER = "resume-transfer"


TRANSITIONS = {
    VMState.DESTROYED: {VMState.INITIAL_TRANSFER},
    VMState.INITIAL_TRANSFER: {VMState.SHUTDOWN, VMState.DESTROYED},
    VMState.SHUTDOWN: {VMState.STARTUP, VMState.DESTROYED},
    VMState.STARTUP: {VMState.RUNNING, VMState.DESTROYED},
    VMState.RUNNING: {
        VMState.SUSPEND_TRANSFER,
        VMState.SHUTDOWN,
        VMState.DESTROYED,
    },
    VMState.SUSPEND_TRANSFER: {VMState.SUSPENDED, VMState.DESTROYED},
    VMState.SUSPENDED: {
        VMState.RESUME_TRANSFER,
        VMState.MIGRATING,
        VMState.DESTROYED,
    },
    VMState.MIGRATING: {VMState.RESUME_TRANSFER, VMState.DESTROYED},
    VMState.RESUME_TRANSFER: {VMState.RUNNING, VMState.DESTROYED},
}


@dataclass(frozen=True)
class VMImage:

    """A VM image.

    Args:
        id (str): the id of the image in repositories.
        size (int): the size in bytes.
        boot_seconds (float): how long the boot lasts when the VM gets
                its whole processing power.

    """

    id: str
    size: int
    boot_seconds: float = 0.0

    def __post_init__(self):
        if self.size <= 0:
            raise ValueError(f"image {self.id!r} needs a positive size")

        if self.boot_seconds < 0:
            raise ValueError(f"negative boot duration: {self.boot_seconds}")

    @property
    def stored(self) -> StorageObject:
        return StorageObject(self.id, self.size)


class VirtualMachine:

    """A virtual machine.

    The VM consumes processing through its CPU consumer spreader, whose
    capacity is the processing of its allocation.  Tasks are
    consumptions between the CPU of the host and this spreader.

    """

    _ids = count(1)

    def __init__(
        self,
        kernel: "SharingKernel",
        image: VMImage,
        resources: ResourceVector | None = None,
    ):
        self.id = next(type(self)._ids)
        self.kernel = kernel
        self.clock = kernel.clock
        self.image = image
        self.resources = resources
        self.state = VMState.DESTROYED
        self.allocation: ResourceAllocation | None = None
        self.cpu_consumer = kernel.consumer(0, f"vm-{self.id}-cpu")
        self.tasks: dict[int, ResourceConsumption] = {}
        self.hosting: "Repository | None" = None
        self.state_listeners: list[
            Callable[["VirtualMachine", VMState, VMState], object]
        ] = []
        self._host: "PhysicalMachine | None" = None
        self._operations: list[Transfer | ResourceConsumption] = []
        self._target: ResourceAllocation | None = None
        self._destroy_when_idle = False

    def __repr__(self):
        return f"<VirtualMachine #{self.id} {self.state.value}>"

    @property
    def host(self) -> "PhysicalMachine | None":
        """The machine running the VM or holding its memory."""
        return self._host

    @property
    def is_running(self) -> bool:
        return self.state is VMState.RUNNING

    @property
    def image_copy_id(self) -> str:
        return f"{self.image.id}@vm-{self.id}"

    @property
    def memory_id(self) -> str:
        return f"vm-{self.id}-memory"

    @property
    def memory_size(self) -> int:
        if self.resources is not None:
            return self.resources.memory

        return settings.DEFAULT_VM_MEMORY

    def deploy(
        self,
        allocation: ResourceAllocation,
        source: "Repository",
        hosting: "Repository | None" = None,
        on_done: OnDone = None,
    ) -> None:
        """Copy the image, boot up and run on an allocation.

        Args:
            allocation (ResourceAllocation): an unused allocation.
            source (Repository): the repository holding the image.
            hosting (Repository, optional): where the VM's copy of the
                    image is kept.  By default, the local repository
                    of the allocation's machine.
            on_done (callable, optional): called with the VM once it
                    is running.

        Raises:
            VMStateError: the VM isn't destroyed.
            AllocationError: the allocation can't be used.
            TransferError: the image can't be copied.

        """
        self._require(VMState.DESTROYED, "deploy")
        self._check_allocation(allocation)
        if hosting is None:
            hosting = allocation.host.repository

        transfer = initiate_transfer(
            source,
            hosting,
            self.image.id,
            on_done=partial(self._image_copied, True, on_done),
            target_id=self.image_copy_id,
        )
        self._operations.append(transfer)
        self.hosting = hosting
        self._bind(allocation)
        self._set_state(VMState.INITIAL_TRANSFER)

    def prestage(
        self,
        source: "Repository",
        hosting: "Repository",
        on_done: OnDone = None,
    ) -> None:
        """Copy the image in advance, leaving the VM shut down.

        Raises:
            VMStateError: the VM isn't destroyed.
            TransferError: the image can't be copied.

        """
        self._require(VMState.DESTROYED, "prestage")
        transfer = initiate_transfer(
            source,
            hosting,
            self.image.id,
            on_done=partial(self._image_copied, False, on_done),
            target_id=self.image_copy_id,
        )
        self._operations.append(transfer)
        self.hosting = hosting
        self._set_state(VMState.INITIAL_TRANSFER)

    def start(
        self, allocation: ResourceAllocation, on_done: OnDone = None
    ) -> None:
        """Boot a shut down VM on an allocation.

        Raises:
            VMStateError: the VM isn't shut down.
            AllocationError: the allocation can't be used.

        """
        self._require(VMState.SHUTDOWN, "start")
        self._check_allocation(allocation)
        self._bind(allocation)
        self._boot(on_done)

    def new_task(
        self,
        total: float,
        limit: float = math.inf,
        on_done: Callable[[ResourceConsumption], object] | None = None,
    ) -> ResourceConsumption:
        """Run a task on the VM.

        Args:
            total (float): the processing units of the task.
            limit (float, optional): the maximum units per tick (the
                    processing of one core, for a single-core task).
            on_done (callable, optional): called with the consumption
                    once completed or cancelled.

        Returns:
            task (ResourceConsumption): the registered consumption.

        Raises:
            VMStateError: the VM isn't running.

        """
        self._require(VMState.RUNNING, "run a task")
        task = ResourceConsumption(
            total, limit, partial(self._task_done, on_done)
        )
        self.tasks[task.id] = task
        self.kernel.register(task, self._host.cpu_provider, self.cpu_consumer)
        return task

    def suspend(self, on_done: OnDone = None) -> None:
        """Pause the tasks, save the memory and free the allocation.

        Raises:
            VMStateError: the VM isn't running.
            InsufficientSpace: the host can't store the memory.

        """
        self._require(VMState.RUNNING, "suspend")
        memory = StorageObject(self.memory_id, self.memory_size)
        transfer = store_local(
            self._host.repository,
            memory,
            on_done=partial(self._suspended, on_done),
        )
        self._operations.append(transfer)
        self._set_state(VMState.SUSPEND_TRANSFER)
        for task in self._sorted_tasks():
            self.kernel.suspend(task)

    def resume(
        self,
        allocation: ResourceAllocation | None = None,
        on_done: OnDone = None,
    ) -> None:
        """Reload the memory and continue the paused tasks.

        Args:
            allocation (ResourceAllocation, optional): an allocation of
                    the host.  By default, one is requested.
            on_done (callable, optional): called once running again.

        Raises:
            VMStateError: the VM isn't suspended.
            AllocationError: the host can't hold the VM now.

        """
        self._require(VMState.SUSPENDED, "resume")
        host = self._host
        if allocation is None:
            allocation = host.allocate(self.resources, strict=True)
            if allocation is None:
                raise AllocationError(
                    f"{host.name} can't hold {self!r} ({self.resources})"
                )
        elif allocation.host is not host:
            raise AllocationError(f"{allocation!r} isn't on {host.name}")
        else:
            self._check_allocation(allocation)

        self._bind(allocation)
        self._reload(on_done)

    def migrate(
        self, target: "PhysicalMachine", on_done: OnDone = None
    ) -> None:
        """Move the VM to another machine.

        A running VM is suspended first.  Its memory (and its image
        copy, if kept on the local disk of the host) is then sent to
        the target, where the VM resumes.  The resources are reserved
        on the target before anything else happens.

        Raises:
            VMStateError: the VM is neither running nor suspended.
            Unconnected: the machines aren't connected.
            AllocationError: the target can't hold the VM.
            InsufficientSpace: the target disk is too small.

        """
        self._require((VMState.RUNNING, VMState.SUSPENDED), "migrate")
        source = self._host
        if target is source:
            raise AllocationError(f"{self!r} already runs on {source.name}")

        if source.node.latency_to(target.node) is None:
            raise Unconnected(
                f"{source.name} isn't connected to {target.name}"
            )

        size = self.memory_size
        if self.hosting is source.repository:
            size += self.image.size

        if size > target.repository.free:
            raise InsufficientSpace(
                f"{target.repository.name} can't hold the state of {self!r}"
            )

        allocation = target.allocate(self.resources, strict=True)
        if allocation is None:
            raise AllocationError(
                f"{target.name} can't hold {self!r} ({self.resources})"
            )

        allocation.bind(self)
        self._target = allocation
        move = partial(self._move, on_done)
        if self.state is VMState.RUNNING:
            try:
                self.suspend(on_done=move)
            except InsufficientSpace:
                self._target = None
                allocation.release()
                raise
        else:
            move(self)

    def reallocate(self, resources: ResourceVector) -> bool:
        """Swap the resources of a running VM, all or nothing.

        Returns:
            reallocated (bool): `False` if the host can't hold the new
                    resources; the VM is untouched then.

        Raises:
            VMStateError: the VM isn't running.

        """
        self._require(VMState.RUNNING, "reallocate")
        if not self._host.resize(self.allocation, resources):
            return False

        self.resources = resources
        self.cpu_consumer.set_processing(resources.processing)
        return True

    def shutdown(self) -> None:
        """Stop a running VM without tasks, keeping its image copy.

        Raises:
            VMStateError: the VM isn't running or still has tasks.

        """
        self._require(VMState.RUNNING, "shut down")
        if self.tasks:
            raise VMStateError(f"{self!r} still has {len(self.tasks)} tasks")

        self._release()
        self._set_state(VMState.SHUTDOWN)

    def destroy(self, kill_tasks: bool = True) -> bool:
        """Destroy the VM, freeing everything it holds.

        Args:
            kill_tasks (bool, optional): cancel the tasks.  If `False`,
                    a running VM is destroyed once its tasks are
                    complete; in other states, tasks are cancelled
                    anyway.

        Returns:
            changed (bool): `False` if the VM was already destroyed.

        """
        if self.state is VMState.DESTROYED:
            return False

        if not kill_tasks and self.is_running and self.tasks:
            self._destroy_when_idle = True
            return True

        self._destroy_when_idle = False
        operations, self._operations = self._operations, []
        if operations:
            logger.group(self.id).warning(
                f"vm {self.id} destroyed in state {self.state.value}"
            )

        for operation in operations:
            if isinstance(operation, Transfer):
                operation.cancel()
            else:
                self.kernel.cancel(operation)

        for task in self._sorted_tasks():
            self.kernel.cancel(task)

        self._release()
        if (target := self._target) is not None:
            self._target = None
            target.release()

        if self.hosting is not None:
            self.hosting.deregister_object(self.image_copy_id)
            self.hosting = None

        if (host := self._host) is not None:
            host.repository.deregister_object(self.memory_id)
            self._host = None

        self._set_state(VMState.DESTROYED)
        logger.forget(self.id)
        return True

    def _check_allocation(self, allocation: ResourceAllocation) -> None:
        if allocation.released:
            reason = "expired" if allocation.expired else "released"
            raise AllocationError(f"{allocation!r} is {reason}")

        if allocation.vm is not None and allocation.vm is not self:
            raise AllocationError(f"{allocation!r} is used by another VM")

    def _bind(self, allocation: ResourceAllocation) -> None:
        allocation.bind(self)
        self.allocation = allocation
        self.resources = allocation.resources
        self._host = allocation.host

    def _release(self) -> None:
        if (allocation := self.allocation) is not None:
            self.allocation = None
            allocation.release()

    def _boot(self, on_done: OnDone) -> None:
        self._set_state(VMState.STARTUP)
        processing = self.allocation.resources.processing
        self.cpu_consumer.set_processing(processing)
        if (ticks := self.clock.to_ticks(self.image.boot_seconds)) == 0:
            self._booted(on_done)
            return

        boot = ResourceConsumption(
            processing * ticks, processing, partial(self._booted, on_done)
        )
        self._operations.append(boot)
        self.kernel.register(boot, self._host.cpu_provider, self.cpu_consumer)

    def _booted(self, on_done: OnDone, boot=None) -> None:
        if boot is not None:
            if boot.cancelled:
                return

            self._operations.remove(boot)

        self._set_state(VMState.RUNNING)
        if on_done is not None:
            on_done(self)

    def _image_copied(
        self, boot: bool, on_done: OnDone, transfer: Transfer
    ) -> None:
        if transfer.state is TransferState.CANCELLED:
            return

        self._operations.remove(transfer)
        self._set_state(VMState.SHUTDOWN)
        if boot:
            self._boot(on_done)
        elif on_done is not None:
            on_done(self)

    def _task_done(self, on_done, task: ResourceConsumption) -> None:
        self.tasks.pop(task.id, None)
        if on_done is not None:
            on_done(task)

        if self._destroy_when_idle and not self.tasks:
            self.destroy()

    def _suspended(self, on_done: OnDone, transfer: Transfer) -> None:
        if transfer.state is TransferState.CANCELLED:
            return

        self._operations.remove(transfer)
        self._release()
        self._set_state(VMState.SUSPENDED)
        if on_done is not None:
            on_done(self)

    def _reload(self, on_done: OnDone) -> None:
        transfer = load_local(
            self._host.repository,
            self.memory_id,
            on_done=partial(self._resumed, on_done),
        )
        self._operations.append(transfer)
        self._set_state(VMState.RESUME_TRANSFER)

    def _resumed(self, on_done: OnDone, transfer: Transfer) -> None:
        if transfer.state is TransferState.CANCELLED:
            return

        self._operations.remove(transfer)
        self.cpu_consumer.set_processing(self.resources.processing)
        provider = self._host.cpu_provider
        for task in self._sorted_tasks():
            if task.state is ConsumptionState.SUSPENDED:
                self.kernel.register(task, provider, self.cpu_consumer)

        self._set_state(VMState.RUNNING)
        if on_done is not None:
            on_done(self)

    def _move(self, on_done: OnDone, vm: "VirtualMachine") -> None:
        source = self._host.repository
        target = self._target.host.repository
        moved = [self.memory_id]
        if self.hosting is source:
            moved.append(self.image_copy_id)

        pending = set(moved)

        def arrived(object_id: str, transfer: Transfer):
            if transfer.state is TransferState.CANCELLED:
                return

            self._operations.remove(transfer)
            source.deregister_object(object_id)
            pending.discard(object_id)
            if not pending:
                self._arrive(on_done)

        for object_id in moved:
            transfer = initiate_transfer(
                source, target, object_id, on_done=partial(arrived, object_id)
            )
            self._operations.append(transfer)

        self._set_state(VMState.MIGRATING)

    def _arrive(self, on_done: OnDone) -> None:
        allocation, self._target = self._target, None
        if self.hosting is self._host.repository:
            self.hosting = allocation.host.repository

        self.allocation = allocation
        self._host = allocation.host
        self._reload(on_done)

    def _sorted_tasks(self) -> list[ResourceConsumption]:
        return [self.tasks[task_id] for task_id in sorted(self.tasks)]

    def _require(self, states, action: str) -> None:
        if isinstance(states, VMState):
            states = (states,)

        if self.state not in states:
            raise VMStateError(
                f"cannot {action} {self!r} in state {self.state.value}"
            )

    def _set_state(self, state: VMState) -> None:
        old = self.state
        if state not in TRANSITIONS[old]:
            raise VMStateError(
                f"{self!r} can't go from {old.value} to {state.value}"
            )

        self.state = state
        logger.group(self.id).debug(
            f"vm {self.id}: {old.value} -> {state.value}"
        )
        for listener in tuple(self.state_listeners):
            listener(self, old, state)


def deploy_vm(
    allocation: ResourceAllocation,
    image: VMImage,
    source: "Repository",
    hosting: "Repository | None" = None,
    on_done: OnDone = None,
) -> VirtualMachine:
    """Create a VM and deploy it on an allocation.

    Raises:
        AllocationError: the allocation can't be used.
        TransferError: the image can't be copied.

    """
    vm = VirtualMachine(allocation.host.kernel, image, allocation.resources)
    vm.deploy(allocation, source, hosting, on_done)
    return vm
