"""Power attributed to virtual machines."""

from typing import TYPE_CHECKING

from energy.errors import MeterError
from energy.meter.abc import EnergyMeter
from energy.utilisation import CounterMark, mark, utilisation

if TYPE_CHECKING:
    from machines.virtual import VirtualMachine


def vm_power(
    vm: "VirtualMachine", host_since: CounterMark, vm_since: CounterMark
) -> float:
    """Return the average power of a VM since two marks.

    The variable part of the host's power (above idle) is split
    according to the share of the host's processing each VM consumed.
    The idle power is split evenly between the hosted VMs.  When the
    host processed nothing, the variable part is zero.

    The idle divisor is the number of machines sharing the host, the
    host itself left out: `len(host.hosted_vms)`.  Work done by the
    host's hidden consumer is attributed to no VM.

    Args:
        vm (VirtualMachine): the running VM.
        host_since (CounterMark): a mark of the host CPU provider.
        vm_since (CounterMark): a mark of the VM CPU consumer, taken at
                the same tick.

    Returns:
        watts (float): the power attributed to the VM.

    Raises:
        MeterError: the VM isn't running on a host.

    """
    if (host := vm.host) is None or not vm.is_running:
        raise MeterError(f"{vm!r} isn't running on a host")

    provider = host.cpu_provider
    if (state := provider.power_state) is None:
        raise MeterError(f"{host!r} has no power state")

    model = state.model
    usage = utilisation(provider, host_since)
    variable = model.power(usage) - model.idle
    provided = provider.processed - host_since.processed
    consumed = vm.cpu_consumer.processed - vm_since.processed
    share = consumed / provided if provided > 0 else 0.0
    hosted = max(len(host.hosted_vms), 1)
    return variable * share + model.idle / hosted


class VMMeter(EnergyMeter):

    """Meter of the power attributed to a VM.

    It reads the counters of the host, so it depends on the meter of
    the host and can't be aggregated with it.  Windows during which the
    VM isn't running, or changes host, are not charged.

    """

    def __init__(
        self,
        vm: "VirtualMachine",
        host_meter: EnergyMeter,
        name: str | None = None,
    ):
        super().__init__(host_meter.clock, name or f"vm-{vm.id}")
        self.vm = vm
        self.host_meter = host_meter
        self._host = None
        self._marks: tuple[CounterMark, CounterMark] | None = None

    def depends_on(self) -> set[EnergyMeter]:
        return {self.host_meter}

    def begin(self) -> None:
        self._remark()

    def energy_since_sample(self, elapsed: int) -> float:
        vm = self.vm
        marks, host = self._marks, self._host
        self._remark()
        if marks is None or host is not vm.host or not vm.is_running:
            return 0.0

        watts = vm_power(vm, *marks)
        return watts * elapsed * self.clock.tick_seconds

    def _remark(self) -> None:
        vm = self.vm
        if vm.host is not None and vm.is_running:
            self._host = vm.host
            self._marks = (mark(vm.host.cpu_provider), mark(vm.cpu_consumer))
        else:
            self._host = None
            self._marks = None
