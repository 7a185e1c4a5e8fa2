"""First fit, smallest requests first."""

from iaas.vm_scheduler.basic import BasicFirstFit


class MinFirstFit(BasicFirstFit):

    """Sort the queue by demand, then serve it like the basic policy.

    The sort is stable: requests with the same demand keep their
    arrival order.

    """

    name = "first-fit-minfirst"

    def dispatch(self) -> None:
        self.service.queue.sort(key=lambda request: request.demand)
        super().dispatch()
