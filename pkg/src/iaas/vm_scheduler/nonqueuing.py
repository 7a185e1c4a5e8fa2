"""First fit, rejecting what can't be served right away."""

from iaas.vm_scheduler.abc import VMScheduler


class NonQueuingFirstFit(VMScheduler):

    """Serve every request that fits now, reject the others."""

    name = "first-fit-nonqueuing"

    def dispatch(self) -> None:
        service = self.service
        for request in tuple(service.queue):
            if not self.place(request):
                service.reject(request, "no capacity available right now")
