"""First fit, blocking on the head of the queue."""

from iaas.vm_scheduler.abc import VMScheduler


class BasicFirstFit(VMScheduler):

    """Serve the queue in order, stop at the first request left over."""

    name = "first-fit-basic"

    def dispatch(self) -> None:
        queue = self.service.queue
        while queue and self.place(queue[0]):
            pass
