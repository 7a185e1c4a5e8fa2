"""VM requests."""

from enum import Enum
from itertools import count
from typing import TYPE_CHECKING

from machines.resources import ResourceVector
from machines.virtual import VMImage, VirtualMachine

if TYPE_CHECKING:
    from network.repository import Repository


class RequestState(Enum):

    """State of a VM request."""

    QUEUED = "queued"
    DISPATCHED = "dispatched"
    REJECTED = "rejected"
    CANCELLED = "cancelled"


class VMRequest:

    """A request for `count` identical VMs, all started at once.

    The VMs exist from the start, in the destroyed state: they can be
    observed (and their state listened to) before being placed.

    """

    _ids = count(1)

    def __init__(
        self,
        image: VMImage,
        resources: ResourceVector,
        vms: list[VirtualMachine],
        source: "Repository",
        submit_tick: int,
    ):
        self.id = next(type(self)._ids)
        self.image = image
        self.resources = resources
        self.vms = vms
        self.source = source
        self.submit_tick = submit_tick
        self.state = RequestState.QUEUED
        self.reason: str | None = None
        self.dispatch_tick: int | None = None

    def __repr__(self):
        return (
            f"<VMRequest #{self.id} {len(self.vms)}x{self.resources} "
            f"{self.state.value}>"
        )

    @property
    def count(self) -> int:
        return len(self.vms)

    @property
    def demand(self) -> tuple[float, int, int]:
        """Sort key: total processing, then memory, then arrival."""
        return (
            self.resources.processing * self.count,
            self.resources.memory * self.count,
            self.id,
        )
