"""Resource vectors."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ResourceVector:

    """An amount of cores, per-core processing and memory.

    `per_core_processing` is in processing units per tick, `memory` in
    bytes.  Vectors are compared component-wise: a vector fits into
    another if none of its components is greater.

    Free capacities can be empty (no core or no memory left); requests
    must not.

    """

    cores: int
    per_core_processing: float
    memory: int

    def __post_init__(self):
        if self.cores < 0 or self.memory < 0:
            raise ValueError(f"negative resources: {self}")

        if not self.per_core_processing > 0:
            raise ValueError(
                "per-core processing must be positive, not "
                f"{self.per_core_processing}"
            )

    def __str__(self):
        return (
            f"{self.cores} cores x {self.per_core_processing:g}, "
            f"{self.memory} bytes"
        )

    @property
    def processing(self) -> float:
        """Total processing per tick."""
        return self.cores * self.per_core_processing

    @property
    def empty(self) -> bool:
        return self.cores == 0 or self.memory == 0

    def fits(self, other: "ResourceVector") -> bool:
        """Return whether this vector fits into `other`."""
        return (
            self.cores <= other.cores
            and self.per_core_processing <= other.per_core_processing
            and self.memory <= other.memory
        )

    def __add__(self, other: "ResourceVector") -> "ResourceVector":
        return replace(
            self,
            cores=self.cores + other.cores,
            memory=self.memory + other.memory,
        )

    def __sub__(self, other: "ResourceVector") -> "ResourceVector":
        return replace(
            self,
            cores=self.cores - other.cores,
            memory=self.memory - other.memory,
        )

    def clip(self, other: "ResourceVector") -> "ResourceVector":
        """Return the component-wise minimum of two vectors."""
        return ResourceVector(
            min(self.cores, other.cores),
            min(self.per_core_processing, other.per_core_processing),
            min(self.memory, other.memory),
        )

    def require(self) -> "ResourceVector":
        """Return the vector if it can be requested.

        Raises:
            ValueError: the vector is empty.

        """
        if self.empty:
            raise ValueError(f"can't request empty resources ({self})")

        return self
