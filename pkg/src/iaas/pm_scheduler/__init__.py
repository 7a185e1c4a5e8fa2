"""PM schedulers."""

from iaas.pm_scheduler.abc import PMScheduler
from iaas.pm_scheduler.always_on import AlwaysOn
from iaas.pm_scheduler.on_demand import OnDemand

PM_SCHEDULERS: dict[str, type[PMScheduler]] = {
    cls.name: cls for cls in (AlwaysOn, OnDemand)
}
