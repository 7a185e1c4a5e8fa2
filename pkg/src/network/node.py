"""Network nodes, latencies and the null spreader."""

from dataclasses import dataclass
from typing import TYPE_CHECKING
from weakref import WeakKeyDictionary

if TYPE_CHECKING:
    from sharing.kernel import SharingKernel
    from sharing.spreader import ResourceSpreader


class NetworkNode:

    """A network node with an inbound and an outbound port.

    Bandwidths are given in bytes per tick.  Two nodes can only
    communicate if a latency is set from the source to the target
    (see `set_latency`); a node can always reach itself, without
    latency.

    """

    def __init__(
        self,
        kernel: "SharingKernel",
        name: str,
        in_bandwidth: float,
        out_bandwidth: float,
    ):
        self.kernel = kernel
        self.name = name
        self.inbound = kernel.consumer(in_bandwidth, f"{name}-in")
        self.outbound = kernel.provider(out_bandwidth, f"{name}-out")
        self.latencies: dict["NetworkNode", int] = {}

    def __repr__(self):
        return f"<NetworkNode {self.name}>"

    def latency_to(self, other: "NetworkNode") -> int | None:
        """Return the latency to another node, `None` if unconnected."""
        if other is self:
            return self.latencies.get(self, 0)

        return self.latencies.get(other)


def set_latency(source: NetworkNode, target: NetworkNode, ticks: int) -> None:
    """Set the latency from `source` to `target`, in ticks.

    Latencies are directed: set both directions for a two-way link.

    Raises:
        ValueError: the latency is negative.

    """
    if ticks < 0:
        raise ValueError(f"negative latency: {ticks}")

    source.latencies[target] = int(ticks)


class NullSpreader:

    """A provider and a consumer that never process anything.

    There is one pair per kernel.  Transfers wait on it while their
    latency elapses.

    """

    _pairs: "WeakKeyDictionary[SharingKernel, NullSpreader]" = (
        WeakKeyDictionary()
    )

    def __init__(self, kernel: "SharingKernel"):
        self.provider: "ResourceSpreader" = kernel.provider(0, "null-out")
        self.consumer: "ResourceSpreader" = kernel.consumer(0, "null-in")

    @classmethod
    def of(cls, kernel: "SharingKernel") -> "NullSpreader":
        """Return the null pair of this kernel."""
        if (pair := cls._pairs.get(kernel)) is None:
            pair = cls(kernel)
            cls._pairs[kernel] = pair

        return pair


@dataclass(frozen=True)
class Router:

    """An intermediary scaling the limit of the transfers it forwards.

    No routing is performed: a transfer lists the routers it passes
    through and its per-tick limit is multiplied by their factors.

    """

    name: str
    factor: float

    def __post_init__(self):
        if not 0 < self.factor <= 1:
            raise ValueError(f"router factor out of (0, 1]: {self.factor}")

    def scale(self, limit: float) -> float:
        """Scale a per-tick limit."""
        return limit * self.factor
