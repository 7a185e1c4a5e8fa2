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

"""Transfers between repositories."""

from enum import Enum
import math
from typing import Callable, Iterable

from network.errors import InsufficientSpace, MissingObject, Unconnected
from network.node import NullSpreader, Router
from network.repository import Repository, StorageObject
from sharing.consumption import ResourceConsumption
from tools.logging.sim import SimLogger

logger = SimLogger("network")
logger.setup()


class TransferState(Enum):

    """State of a transfer."""

    STAGING = "staging"
    RUNNING = "running"
    DONE = "done"
    CANCELLED = "cancelled"


class Transfer:

    """A transfer of bytes, ending with an object stored somewhere.

    The transfer handle is inert: it can be read at any time, and only
    changes when the kernel processes its consumption.  The callback
    receives the transfer once done or cancelled.

    """

    def __init__(
        self,
        kernel,
        stored: StorageObject,
        target: Repository | None,
        route: tuple,
        limit: float,
        latency: int,
        on_done: Callable[["Transfer"], object] | None,
        on_complete: Callable[["Transfer"], object] | None = None,
    ):
        self.kernel = kernel
        self.object = stored
        self.target = target
        self.route = route
        self.latency = latency
        self.on_done = on_done
        self._on_complete = on_complete
        self.started_at = kernel.clock.current_tick
        self.finished_at: int | None = None
        self.consumption = ResourceConsumption(
            stored.size, limit, self._finished
        )
        self.staging = None
        if latency > 0:
            null = NullSpreader.of(kernel)
            self.state = TransferState.STAGING
            kernel.register(self.consumption, null.provider, null.consumer)
            self.staging = kernel.clock.defer(latency, self._start)
        else:
            self.state = TransferState.RUNNING
            kernel.register(self.consumption, *route)

    def __repr__(self):
        return f"<Transfer {self.object.id} {self.state.value}>"

    @property
    def done(self) -> bool:
        return self.state is TransferState.DONE

    def cancel(self) -> None:
        """Cancel the transfer, releasing the target's reservation."""
        if self.state in (TransferState.DONE, TransferState.CANCELLED):
            return

        if self.staging is not None:
            self.staging.cancel()

        self.kernel.cancel(self.consumption)

    def _start(self) -> None:
        self.staging = None
        self.state = TransferState.RUNNING
        self.kernel.move(self.consumption, *self.route)

    def _finished(self, consumption: ResourceConsumption) -> None:
        self.finished_at = self.kernel.clock.current_tick
        if consumption.cancelled:
            self.state = TransferState.CANCELLED
            if self.target is not None:
                self.target.release(self.object.id, self.object.size)
            logger.debug(f"transfer of {self.object.id} cancelled")
        else:
            self.state = TransferState.DONE
            if self.target is not None:
                self.target.commit(self.object)
            if self._on_complete is not None:
                self._on_complete(self)

        if self.on_done is not None:
            self.on_done(self)


def initiate_transfer(
    source: Repository,
    target: Repository,
    object_id: str,
    on_done: Callable[[Transfer], object] | None = None,
    target_id: str | None = None,
    via: Iterable[Router] = (),
    limit: float = math.inf,
) -> Transfer:
    """Copy an object from one repository to another.

    Args:
        source (Repository): the repository holding the object.
        target (Repository): the repository receiving the copy.
        object_id (str): the id of the object to copy.
        on_done (callable, optional): called with the transfer once
                done or cancelled.
        target_id (str, optional): the id of the copy, the same as
                the original by default.
        via (routers, optional): the routers the transfer goes through.
        limit (float, optional): the maximum bytes per tick.

    Returns:
        transfer (Transfer): the transfer handle.

    Raises:
        MissingObject: the object isn't in the source repository.
        Unconnected: no latency is set between the two nodes.
        InsufficientSpace: the target can't reserve the space needed.

    """
    if (original := source.lookup(object_id)) is None:
        raise MissingObject(f"{object_id!r} isn't stored in {source.name}")

    latency = source.node.latency_to(target.node)
    if latency is None:
        raise Unconnected(
            f"{source.node.name} isn't connected to {target.node.name}"
        )

    copy = StorageObject(target_id or object_id, original.size)
    if not target.reserve(copy.id, copy.size):
        raise InsufficientSpace(
            f"{target.name} can't hold {copy.id!r} ({copy.size} bytes, "
            f"{target.free} free)"
        )

    for router in via:
        limit = router.scale(limit)

    kernel = source.node.kernel
    route = (source.node.outbound, target.node.inbound)
    return Transfer(kernel, copy, target, route, limit, latency, on_done)


def store_local(
    repository: Repository,
    stored: StorageObject,
    on_done: Callable[[Transfer], object] | None = None,
) -> Transfer:
    """Write a new object to a repository through its local path.

    Raises:
        InsufficientSpace: the repository can't hold the object.

    """
    if not repository.reserve(stored.id, stored.size):
        raise InsufficientSpace(
            f"{repository.name} can't hold {stored.id!r} "
            f"({stored.size} bytes, {repository.free} free)"
        )

    kernel = repository.node.kernel
    return Transfer(
        kernel,
        stored,
        repository,
        repository.local_path,
        math.inf,
        0,
        on_done,
    )


def load_local(
    repository: Repository,
    object_id: str,
    on_done: Callable[[Transfer], object] | None = None,
    delete: bool = True,
) -> Transfer:
    """Read an object from a repository through its local path.

    Args:
        repository (Repository): the repository holding the object.
        object_id (str): the object to read.
        on_done (callable, optional): called with the transfer.
        delete (bool, optional): remove the object once read.

    Raises:
        MissingObject: the object isn't in the repository.

    """
    if (stored := repository.lookup(object_id)) is None:
        raise MissingObject(f"{object_id!r} isn't stored in {repository.name}")

    def on_complete(transfer):
        if delete:
            repository.deregister_object(object_id)

    kernel = repository.node.kernel
    return Transfer(
        kernel,
        stored,
        None,
        repository.local_path,
        math.inf,
        0,
        on_done,
        on_complete,
    )
