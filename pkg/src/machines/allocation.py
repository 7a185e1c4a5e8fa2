"""Resource allocations on physical machines."""

from itertools import count
from typing import Callable, TYPE_CHECKING

from machines.errors import AllocationError
from machines.resources import ResourceVector

if TYPE_CHECKING:
    from clock import DeferredEvent
    from machines.physical import PhysicalMachine
    from machines.virtual import VirtualMachine


class ResourceAllocation:

    """Resources reserved on a physical machine.

    An allocation no VM is bound to expires after a while, freeing its
    resources.  Binding a VM disarms the expiry: the allocation then
    lives until it is released.

    """

    _ids = count(1)

    def __init__(
        self,
        host: "PhysicalMachine",
        resources: ResourceVector,
        expiry: int,
    ):
        self.id = next(type(self)._ids)
        self.host = host
        self.resources = resources
        self.vm: "VirtualMachine | None" = None
        self.released = False
        self.expired = False
        self.release_listeners: list[
            Callable[["ResourceAllocation"], object]
        ] = []
        self.expiry: "DeferredEvent | None" = host.clock.defer(
            expiry, self._expire
        )

    def __repr__(self):
        return (
            f"<ResourceAllocation #{self.id} on {self.host.name}: "
            f"{self.resources}>"
        )

    @property
    def bound(self) -> bool:
        return self.vm is not None

    def bind(self, vm: "VirtualMachine") -> None:
        """Bind a VM, disarming the expiry.

        Raises:
            AllocationError: the allocation is released or already
                    bound to another VM.

        """
        if self.released:
            reason = "expired" if self.expired else "released"
            raise AllocationError(f"{self!r} is {reason}")

        if self.vm is not None and self.vm is not vm:
            raise AllocationError(f"{self!r} is already used by {self.vm!r}")

        self.vm = vm
        if self.expiry is not None:
            self.expiry.cancel()
            self.expiry = None

    def release(self) -> bool:
        """Free the resources, return whether they were still held."""
        if self.released:
            return False

        if self.expiry is not None:
            self.expiry.cancel()
            self.expiry = None

        self.released = True
        self.host.free_allocation(self)
        for listener in tuple(self.release_listeners):
            listener(self)

        return True

    cancel = release

    def _expire(self) -> None:
        self.expiry = None
        self.expired = True
        self.release()
