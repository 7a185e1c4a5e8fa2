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

"""Resource spreaders, the providers and consumers of capacity."""

from enum import Enum
from itertools import count
import math
from typing import Any, Callable, TYPE_CHECKING

if TYPE_CHECKING:
    from sharing.consumption import ResourceConsumption
    from sharing.group import InfluenceGroup
    from sharing.kernel import SharingKernel


class Role(Enum):

    """Side of a spreader in consumptions."""

    PROVIDER = "provider"
    CONSUMER = "consumer"


class ResourceSpreader:

    """A provider or consumer of processing capacity.

    The capacity available in a tick is `per_tick_processing` scaled by
    the processing factor of the current power state.  Spreaders keep
    two cumulative counters: `processed` (units produced or consumed)
    and `capacity_ticks` (the integral of the capacity over time), which
    together give the utilisation over any window.

    Spreaders are created through a kernel (see `SharingKernel.spreader`)
    and never change kernel.

    """

    _ids = count(1)

    def __init__(
        self,
        kernel: "SharingKernel",
        role: Role,
        per_tick_processing: float,
        name: str | None = None,
    ):
        if per_tick_processing < 0 or not math.isfinite(per_tick_processing):
            raise ValueError(
                f"invalid processing capacity: {per_tick_processing}"
            )

        self.id = next(type(self)._ids)
        self.kernel = kernel
        self.role = Role(role)
        self.name = name or f"{self.role.value}-{self.id}"
        self.per_tick_processing = float(per_tick_processing)
        self.processing_factor = 1.0
        self.power_state: Any = None
        self.consumptions: dict[int, "ResourceConsumption"] = {}
        self.processed = 0.0
        self.capacity_ticks = 0.0
        self.last_accounted = kernel.clock.current_tick
        self.added: list["ResourceConsumption"] = []
        self.lost = False
        self.group: "InfluenceGroup | None" = None
        self.state_listeners: list[Callable[["ResourceSpreader"], Any]] = []

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} #{self.id}>"

    @property
    def is_provider(self) -> bool:
        return self.role is Role.PROVIDER

    @property
    def capacity(self) -> float:
        """Capacity available per tick, in the current power state."""
        return self.per_tick_processing * self.processing_factor

    def account(self, tick: int) -> None:
        """Accumulate the capacity integral up to `tick`."""
        if (elapsed := tick - self.last_accounted) > 0:
            self.capacity_ticks += self.capacity * elapsed
            self.last_accounted = tick

    def settle(self) -> None:
        """Bring the counters of this spreader up to the current tick."""
        self.kernel.settle(self)

    def set_power_state(self, state: Any, factor: float) -> None:
        """Change the power state and its processing factor.

        State listeners (meters, mostly) are told before the change, so
        they can charge the elapsed part of their window to the old state.

        Args:
            state (any): the new power state.
            factor (float): the multiplier on `per_tick_processing`,
                    between 0 and 1.

        """
        if not 0 <= factor <= 1:
            raise ValueError(f"processing factor out of [0, 1]: {factor}")

        for listener in tuple(self.state_listeners):
            listener(self)

        self.power_state = state
        if factor != self.processing_factor:
            self.kernel.set_capacity(self, factor=factor)

    def set_processing(self, per_tick_processing: float) -> None:
        """Change the nominal capacity of this spreader."""
        for listener in tuple(self.state_listeners):
            listener(self)

        self.kernel.set_capacity(self, per_tick=per_tick_processing)
