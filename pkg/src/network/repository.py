"""Repositories, storing objects such as VM images."""

from dataclasses import dataclass
from typing import Iterable, TYPE_CHECKING

if TYPE_CHECKING:
    from network.node import NetworkNode


@dataclass(frozen=True)
class StorageObject:

    """An object stored in repositories, `size` in bytes."""

    id: str
    size: int

    def __post_init__(self):
        if self.size <= 0:
            raise ValueError(f"object {self.id!r} needs a positive size")


class Repository:

    """A repository attached to a network node.

    Registering and deregistering objects is instantaneous.  Transfers
    to the repository reserve the space they need when they start; the
    reservation becomes used space when they complete.

    If a disk bandwidth is given, the repository gets its own disk
    spreaders, used to write and read objects locally (VM memory
    states, for instance).  Otherwise local copies go through the
    ports of the node.

    """

    def __init__(
        self,
        name: str,
        capacity: int,
        node: "NetworkNode",
        disk_bandwidth: float | None = None,
    ):
        if capacity <= 0:
            raise ValueError(f"repository {name!r} needs a positive capacity")

        self.name = name
        self.capacity = capacity
        self.node = node
        self.contents: dict[str, StorageObject] = {}
        self.used = 0
        self.reserved = 0
        self.incoming: set[str] = set()
        self.disk_in = self.disk_out = None
        if disk_bandwidth is not None:
            kernel = node.kernel
            self.disk_in = kernel.consumer(disk_bandwidth, f"{name}-disk-in")
            self.disk_out = kernel.provider(disk_bandwidth, f"{name}-disk-out")

    def __repr__(self):
        return (
            f"<Repository {self.name} used={self.used} "
            f"reserved={self.reserved}/{self.capacity}>"
        )

    def __contains__(self, object_id: str) -> bool:
        return object_id in self.contents

    @property
    def free(self) -> int:
        """Free space, reservations excluded."""
        return self.capacity - self.used - self.reserved

    @property
    def local_path(self) -> tuple:
        """Spreaders used for local reads and writes."""
        if self.disk_out is not None:
            return self.disk_out, self.disk_in

        return self.node.outbound, self.node.inbound

    def lookup(self, object_id: str) -> StorageObject | None:
        """Return the stored object with this id, if any."""
        return self.contents.get(object_id)

    def register_object(self, stored: StorageObject) -> bool:
        """Store an object right away.

        Returns:
            stored (bool): whether the object was stored.  An object
                    too big for the free space, or whose id is already
                    used, is refused without any change.

        """
        if stored.id in self.contents or stored.id in self.incoming:
            return False

        if stored.size > self.free:
            return False

        self.contents[stored.id] = stored
        self.used += stored.size
        return True

    def deregister_object(self, object_id: str) -> bool:
        """Remove an object, return whether it was there."""
        if (stored := self.contents.pop(object_id, None)) is None:
            return False

        self.used -= stored.size
        return True

    def reserve(self, object_id: str, size: int) -> bool:
        """Reserve space for an incoming object."""
        if object_id in self.contents or object_id in self.incoming:
            return False

        if size > self.free:
            return False

        self.incoming.add(object_id)
        self.reserved += size
        return True

    def release(self, object_id: str, size: int) -> None:
        """Release a reservation that won't be used."""
        if object_id in self.incoming:
            self.incoming.discard(object_id)
            self.reserved -= size

    def commit(self, stored: StorageObject) -> None:
        """Turn a reservation into a stored object."""
        self.release(stored.id, stored.size)
        self.contents[stored.id] = stored
        self.used += stored.size


def lookup(repositories: Iterable[Repository], object_id: str) -> list:
    """Return the repositories holding an object."""
    return [repo for repo in repositories if object_id in repo.contents]
