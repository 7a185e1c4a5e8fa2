"""Power states."""

from dataclasses import dataclass

from energy.model import ConsumptionModel


@dataclass(frozen=True)
class PowerState:

    """A power state: a consumption model and a processing factor.

    The factor multiplies the processing capacity of the spreader in
    this state: 0 switches processing off, 1 gives full capacity.

    """

    name: str
    model: ConsumptionModel
    processing_factor: float = 1.0

    def __post_init__(self):
        if not 0 <= self.processing_factor <= 1:
            raise ValueError(
                f"processing factor of {self.name!r} out of [0, 1]: "
                f"{self.processing_factor}"
            )
