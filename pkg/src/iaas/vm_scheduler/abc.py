"""Base class of VM schedulers."""

from abc import ABCMeta, abstractmethod
from typing import TYPE_CHECKING

from iaas.log import logger
from machines.allocation import ResourceAllocation
from machines.errors import AllocationError
from network.errors import TransferError

if TYPE_CHECKING:
    from iaas.request import VMRequest
    from iaas.service import IaaSService


class VMScheduler(metaclass=ABCMeta):

    """A VM scheduler, placing queued requests on machines.

    The service calls `dispatch` when the queue or the free capacity
    changed, at most once per tick.  Placement is first fit: machines
    are tried in registration order.

    """

    name: str

    def __init__(self, service: "IaaSService"):
        self.service = service

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    @abstractmethod
    def dispatch(self) -> None:
        """Serve what can be served in the queue."""

    def place(self, request: "VMRequest") -> bool:
        """Place every VM of a request, or none.

        Returns:
            placed (bool): whether the request was served.

        """
        allocations = self.allocate(request)
        if allocations is None:
            return False

        service = self.service
        try:
            for vm, allocation in zip(request.vms, allocations):
                vm.deploy(
                    allocation,
                    request.source,
                    service.hosting_for(allocation, request.source),
                )
        except (AllocationError, TransferError) as err:
            logger.warning(f"request {request.id} can't be deployed: {err}")
            with service.rolling_back():
                for vm in request.vms:
                    vm.destroy()

                for allocation in allocations:
                    allocation.release()

            service.reject(request, str(err))
            return True

        service.served(request)
        return True

    def allocate(
        self, request: "VMRequest"
    ) -> list[ResourceAllocation] | None:
        """Allocate resources for every VM of a request, first fit.

        Returns:
            allocations (list or None): one allocation per VM, `None`
                    if some VM can't be placed (nothing is kept then).

        """
        allocations = []
        for _ in request.vms:
            for pm in self.service.machines:
                if pm.can_allocate(request.resources):
                    allocation = pm.allocate(request.resources, strict=True)
                    if allocation is not None:
                        allocations.append(allocation)
                        break
            else:
                with self.service.rolling_back():
                    for allocation in allocations:
                        allocation.release()

                return None

        return allocations
