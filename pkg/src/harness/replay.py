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

"""Replay of a trace on a simulated cloud.

Every job gets its own VMs: as many as needed to hold its cores, all
requested at once.  Once they are all running, each VM runs a task
using its whole processing for the runtime of the job, after which
the VMs are terminated.

```python
replay = Replay(load_scenario("data/demo.yml"), trace)
result = replay.run()
print(result.measurement.simulated_seconds)
```

"""

from dataclasses import dataclass, field
from functools import partial
import math
import time

from clock import SimClock
from energy.meter import (
    AggregateMeter,
    ConstantSampler,
    DirectMeter,
    IndirectMeter,
    MeterReading,
)
from harness.errors import ScenarioError
from harness.log import logger
from harness.measurement import RunMeasurement, peak_rss
from harness.scenario import Scenario
from harness.trace import Trace, TraceJob
from iaas import IaaSService, OnDemand, RequestRejected
from machines import (
    PMState,
    PROFILES,
    ResourceVector,
    VMImage,
    VMState,
    build_machine,
)
from network import NetworkNode, Repository
from sharing import SharingKernel, get_logic
from tools.logging.sim import SimLogger
from tools.settings import settings


@dataclass
class JobRecord:

    """What happened to a job.  Times are ticks."""

    job: TraceJob
    resources: ResourceVector
    vm_count: int
    outcome: str = "pending"
    reason: str = ""
    submitted: int | None = None
    running: int | None = None
    started: int | None = None
    completed: int | None = None
    request: object = None
    remaining: int = 0

    @property
    def finished(self) -> bool:
        return self.outcome != "pending"


@dataclass
class ReplayResult:

    """The outcome of a replay."""

    scenario: Scenario
    tick_seconds: float
    records: list[JobRecord]
    readings: list[MeterReading] = field(default_factory=list)
    energy: dict[str, float] = field(default_factory=dict)
    measurement: RunMeasurement | None = None


class Replay:

    """A trace replayed on a scenario.

    Args:
        scenario (Scenario): the simulated infrastructure.
        trace (Trace): the jobs.
        meter_period (float, optional): the metering period in
                seconds, overriding the scenario's.  No meter is set
                without a period.

    Raises:
        ScenarioError: the scenario can't host any job.

    """

    def __init__(
        self,
        scenario: Scenario,
        trace: Trace,
        meter_period: float | None = None,
    ):
        if not scenario.machines:
            raise ScenarioError(f"scenario {scenario.name} has no machine")

        self.scenario = scenario
        self.trace = trace
        if meter_period is None:
            meter_period = scenario.metering.period_seconds

        self.meter_period = meter_period
        self.clock = SimClock(scenario.tick_seconds)
        self.kernel = SharingKernel(self.clock, get_logic(scenario.logic))
        self.service = IaaSService(
            self.kernel,
            vm_scheduler=scenario.schedulers.vm,
            pm_scheduler=scenario.schedulers.pm,
            image_hosting=scenario.image_hosting,
            latency=self.clock.to_ticks(scenario.latency_ms / 1000),
            name=scenario.name,
        )
        if isinstance(self.service.pm_scheduler, OnDemand):
            self.service.pm_scheduler.grace = self.clock.to_ticks(
                scenario.schedulers.grace_seconds
            )

        self.image = VMImage(
            scenario.image.id, scenario.image.size, scenario.image.boot_seconds
        )
        self.records: list[JobRecord] = []
        self.pending = 0
        self.readings: list[MeterReading] = []
        self.meter: AggregateMeter | None = None
        self.meters = {}
        self.by_request: dict[int, JobRecord] = {}
        self.service.subscribe("queue-change", self._queue_changed)
        self._build_repository()
        self._build_machines()

    def _per_tick(self, per_second: float) -> float:
        return per_second * self.clock.tick_seconds

    def _build_repository(self) -> None:
        config = self.scenario.repository
        bandwidth = self._per_tick(config.bandwidth)
        node = NetworkNode(self.kernel, config.name, bandwidth, bandwidth)
        repository = Repository(config.name, config.capacity, node)
        if not repository.register_object(self.image.stored):
            raise ScenarioError(
                f"image {self.image.id!r} doesn't fit in {config.name}"
            )

        self.service.register_repository(repository)
        self.repository = repository

    def _build_machines(self) -> None:
        for template in self.scenario.machines:
            profile = PROFILES[template.profile]()
            capacity = ResourceVector(
                template.cores,
                self._per_tick(template.core_speed),
                template.memory,
            )
            disk_bandwidth = None
            if template.disk_bandwidth is not None:
                disk_bandwidth = self._per_tick(template.disk_bandwidth)

            state = PMState.RUNNING
            if template.state == "off":
                state = PMState.OFF

            for index in range(template.count):
                pm = build_machine(
                    self.kernel,
                    f"{template.name}-{index}",
                    capacity,
                    self._per_tick(template.bandwidth),
                    template.disk,
                    profile=profile,
                    disk_bandwidth=disk_bandwidth,
                    state=state,
                )
                self.service.register_pm(pm)

    def _size(self, job: TraceJob) -> tuple[ResourceVector, int]:
        """Return the resources of each VM of a job and their number."""
        largest = self.scenario.max_vm_cores
        count = math.ceil(job.cores / largest)
        cores = math.ceil(job.cores / count)
        speed = min(template.core_speed for template in self.scenario.machines)
        resources = ResourceVector(
            cores,
            self._per_tick(speed),
            self.scenario.vm.memory,
        )
        return resources, count

    def _start_meters(self) -> None:
        period = self.clock.to_ticks(self.meter_period)
        children = []
        for pm in self.service.machines:
            meter = DirectMeter(pm.cpu_provider, name=pm.name)
            meter.listeners.append(self.readings.append)
            children.append(meter)

        if (watts := self.scenario.metering.hvac_watts) > 0:
            hvac = IndirectMeter(self.clock, ConstantSampler(watts), "hvac")
            hvac.listeners.append(self.readings.append)
            children.append(hvac)

        self.meter = AggregateMeter(self.clock, children, name="total")
        self.meter.listeners.append(self.readings.append)
        self.meters = {meter.name: meter for meter in children}
        self.meter.start(max(period, 1))

    def run(self) -> ReplayResult:
        """Replay the whole trace.

        Raises:
            ClockError: the simulation exceeded the tick budget.

        """
        SimLogger.bind_all(self.clock)
        started = time.perf_counter()
        if self.meter_period is not None:
            self._start_meters()

        for job in self.trace:
            resources, count = self._size(job)
            record = JobRecord(job, resources, count)
            self.records.append(record)
            self.pending += 1
            if (delay := self.clock.to_ticks(job.submit)) < 1:
                self._submit(record)
            else:
                self.clock.defer(delay, partial(self._submit, record))

        if not self.pending:
            self._stop_meters()

        self.clock.simulate_until_last_event(max_tick=settings.TICK_BUDGET)
        wall = max(time.perf_counter() - started, 1e-9)
        logger.info(
            f"replay of {len(self.records)} jobs done in {wall:.3f}s "
            f"(simulated {self.clock.now_seconds:.3f}s)"
        )
        return self._result(wall)

    def _submit(self, record: JobRecord) -> None:
        record.submitted = self.clock.current_tick
        try:
            request = self.service.request_vms(
                self.image, record.resources, record.vm_count
            )
        except RequestRejected as err:
            self._finish(record, "rejected", err.reason)
            return

        record.request = request
        self.by_request[request.id] = record
        for vm in request.vms:
            vm.state_listeners.append(partial(self._vm_changed, record))

    def _queue_changed(self, event) -> None:
        if "rejected" not in event.data:
            return

        record = self.by_request.get(event.subject.id)
        if record is not None and not record.finished:
            self._finish(record, "rejected", event.data["rejected"])

    def _vm_changed(self, record: JobRecord, vm, old, new) -> None:
        if record.finished:
            return

        if new is VMState.RUNNING:
            vms = record.request.vms
            if all(other.is_running for other in vms):
                self._start_tasks(record)
        elif new is VMState.DESTROYED:
            self._finish(record, "failed", f"vm {vm.id} was destroyed")
            for other in record.request.vms:
                other.destroy()

    def _start_tasks(self, record: JobRecord) -> None:
        now = self.clock.current_tick
        record.running = record.started = now
        record.remaining = record.vm_count
        ticks = record.job.runtime / self.clock.tick_seconds
        for vm in record.request.vms:
            processing = vm.resources.processing
            vm.new_task(
                processing * ticks,
                processing,
                on_done=partial(self._task_done, record),
            )

    def _task_done(self, record: JobRecord, task) -> None:
        if task.cancelled or record.finished:
            return

        record.remaining -= 1
        if record.remaining == 0:
            record.completed = self.clock.current_tick
            self._finish(record, "done")
            for vm in record.request.vms:
                self.service.terminate_vm(vm)

    def _finish(self, record: JobRecord, outcome: str, reason: str = ""):
        record.outcome = outcome
        record.reason = reason
        if record.request is not None:
            self.by_request.pop(record.request.id, None)
        if outcome != "done":
            logger.warning(f"job {record.job.id} {outcome}: {reason}")

        self.pending -= 1
        if not self.pending:
            self._stop_meters()

    def _stop_meters(self) -> None:
        if self.meter is not None and self.meter.running:
            self.meter.stop()

    def _result(self, wall: float) -> ReplayResult:
        tick = self.clock.tick_seconds
        done = [record for record in self.records if record.outcome == "done"]
        completions = sorted(record.completed * tick for record in done)
        submitted = [
            record.submitted
            for record in self.records
            if record.submitted is not None
        ]
        first = min(submitted, default=0) * tick
        energy = {}
        if self.meter is not None:
            energy = {
                name: meter.read() for name, meter in self.meters.items()
            }
            energy[self.meter.name] = self.meter.read()

        measurement = RunMeasurement(
            config_id=self.scenario.config_id,
            task_count=len(self.records),
            machine_count=len(self.service.machines),
            wall_seconds=wall,
            simulated_seconds=max(completions, default=first) - first,
            peak_rss=peak_rss(),
            completed=len(done),
            rejected=sum(r.outcome == "rejected" for r in self.records),
            failed=sum(r.outcome == "failed" for r in self.records),
            energy_joules=energy.get("total"),
            meter_period=self.meter_period,
            completions=completions,
        )
        return ReplayResult(
            self.scenario,
            tick,
            self.records,
            self.readings,
            energy,
            measurement,
        )


def replay(
    scenario: Scenario, trace: Trace, meter_period: float | None = None
) -> ReplayResult:
    """Replay a trace on a scenario and return the result."""
    return Replay(scenario, trace, meter_period).run()
