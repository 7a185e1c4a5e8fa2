"""Scenarios: the infrastructure a trace is replayed on.

A scenario is a YAML document.  Every key is optional: the default
scenario is 20 machines of 64 cores, 256 GB of memory and 5 TB of
disk, linked at one gigabit per second to a central repository that
holds a 100 MB image.

```yaml
name: small
machines:
  - name: pm
    count: 2
    cores: 8
    profile: simplified
schedulers:
  vm: first-fit-minfirst
  pm: pm-on-demand
metering:
  period_seconds: 60
```

Rates are given per second and sizes in bytes.  Anything a scenario
doesn't set comes from the settings.

"""

from hashlib import sha1
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError, validator
import yaml

from harness.errors import ScenarioError
from machines.profiles import PROFILES
from tools.settings import settings

GB = 1_000_000_000
TB = 1000 * GB
GIGABIT = 125_000_000


class Section(BaseModel):

    """A section of a scenario."""

    class Config:

        extra = "forbid"


class MachineTemplate(Section):

    """A group of identical machines."""

    name: str = "pm"
    count: int = Field(20, gt=0)
    cores: int = Field(64, gt=0)
    core_speed: float = Field(1.0, gt=0)
    memory: int = Field(256 * GB, gt=0)
    disk: int = Field(5 * TB, gt=0)
    bandwidth: float = Field(GIGABIT, gt=0)
    disk_bandwidth: float | None = Field(None, gt=0)
    profile: str = "simplified"
    state: Literal["off", "running"] = "running"

    @validator("profile")
    def check_profile(cls, value):
        if value not in PROFILES:
            raise ValueError(
                f"unknown profile {value!r}, expected one of "
                f"{', '.join(PROFILES)}"
            )

        return value


class RepositoryConfig(Section):

    """The central repository."""

    name: str = "central"
    capacity: int = Field(100 * TB, gt=0)
    bandwidth: float = Field(10 * GIGABIT, gt=0)


class ImageConfig(Section):

    """The image every VM boots from."""

    id: str = "default-image"
    size: int = Field(default_factory=lambda: settings.DEFAULT_IMAGE_SIZE)
    boot_seconds: float = Field(
        default_factory=lambda: settings.DEFAULT_BOOT_SECONDS
    )


class VMConfig(Section):

    """How jobs are turned into VMs."""

    memory: int = Field(default_factory=lambda: settings.DEFAULT_VM_MEMORY)
    max_cores: int | None = Field(None, gt=0)


class SchedulerConfig(Section):

    """Scheduler names."""

    vm: Literal[
        "first-fit-basic", "first-fit-nonqueuing", "first-fit-minfirst"
    ] = Field(default_factory=lambda: settings.VM_SCHEDULER)
    pm: Literal["pm-always-on", "pm-on-demand"] = Field(
        default_factory=lambda: settings.PM_SCHEDULER
    )
    grace_seconds: float = Field(
        default_factory=lambda: settings.PM_GRACE_SECONDS, ge=0
    )


class MeteringConfig(Section):

    """Energy metering; no meter if the period isn't set."""

    period_seconds: float | None = Field(None, gt=0)
    hvac_watts: float = Field(0.0, ge=0)


class Scenario(Section):

    """A whole scenario."""

    name: str = "default"
    tick_seconds: float = Field(
        default_factory=lambda: settings.TICK_SECONDS, gt=0
    )
    latency_ms: float = Field(0.0, ge=0)
    logic: Literal["max-min", "equal-split"] = "max-min"
    image_hosting: Literal["local", "central"] = Field(
        default_factory=lambda: settings.IMAGE_HOSTING
    )
    machines: list[MachineTemplate] = Field(
        default_factory=lambda: [MachineTemplate()]
    )
    repository: RepositoryConfig = Field(default_factory=RepositoryConfig)
    image: ImageConfig = Field(default_factory=ImageConfig)
    vm: VMConfig = Field(default_factory=VMConfig)
    schedulers: SchedulerConfig = Field(default_factory=SchedulerConfig)
    metering: MeteringConfig = Field(default_factory=MeteringConfig)

    @property
    def machine_count(self) -> int:
        return sum(template.count for template in self.machines)

    @property
    def largest_cores(self) -> int:
        """Cores of the largest machine."""
        return max((template.cores for template in self.machines), default=0)

    @property
    def max_vm_cores(self) -> int:
        """Cores of the largest VM a job can get."""
        largest = self.largest_cores
        if self.vm.max_cores is not None:
            return min(self.vm.max_cores, largest)

        return largest

    @property
    def config_id(self) -> str:
        """An id shared by scenarios differing only by their name."""
        digest = sha1(self.json(exclude={"name"}).encode("utf-8"))
        return digest.hexdigest()[:12]


def load_scenario(path: Path | str | None = None) -> Scenario:
    """Load a scenario file, the default scenario if no path is given.

    Raises:
        ScenarioError: the file can't be read or isn't valid.

    """
    if path is None:
        return Scenario()

    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as file:
            content = yaml.safe_load(file) or {}
    except (OSError, yaml.YAMLError) as err:
        raise ScenarioError(f"cannot read {path}: {err}") from None

    if not isinstance(content, dict):
        raise ScenarioError(f"{path} should hold a mapping")

    try:
        return Scenario.parse_obj(content)
    except ValidationError as err:
        raise ScenarioError(f"invalid scenario {path}:\n{err}") from None
