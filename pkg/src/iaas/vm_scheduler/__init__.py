"""VM schedulers."""

from iaas.vm_scheduler.abc import VMScheduler
from iaas.vm_scheduler.basic import BasicFirstFit
from iaas.vm_scheduler.minfirst import MinFirstFit
from iaas.vm_scheduler.nonqueuing import NonQueuingFirstFit

VM_SCHEDULERS: dict[str, type[VMScheduler]] = {
    cls.name: cls for cls in (BasicFirstFit, NonQueuingFirstFit, MinFirstFit)
}
