"""Power consumption models, mapping utilisation to watts."""

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass

# Utilisations computed from counters may overshoot [0, 1] slightly.
SLACK = 1e-9


class ConsumptionModel(metaclass=ABCMeta):

    """A model giving the instantaneous power draw."""

    @abstractmethod
    def draw(self, utilisation: float) -> float:
        """Return the power for a utilisation already in [0, 1]."""

    @property
    @abstractmethod
    def idle(self) -> float:
        """The power at zero utilisation."""

    def power(self, utilisation: float) -> float:
        """Return the power, in watts, at this utilisation.

        Raises:
            ValueError: the utilisation is outside of [0, 1].

        """
        if not -SLACK <= utilisation <= 1 + SLACK:
            raise ValueError(f"utilisation out of [0, 1]: {utilisation}")

        return self.draw(min(max(utilisation, 0.0), 1.0))


@dataclass(frozen=True)
class ConstantModel(ConsumptionModel):

    """Constant draw, whatever the utilisation."""

    watts: float

    def __post_init__(self):
        if self.watts < 0:
            raise ValueError(f"negative power draw: {self.watts}")

    @property
    def idle(self) -> float:
        return self.watts

    def draw(self, utilisation: float) -> float:
        return self.watts


@dataclass(frozen=True)
class LinearModel(ConsumptionModel):

    """Linear interpolation between a minimum and a maximum draw."""

    min_watts: float
    max_watts: float

    def __post_init__(self):
        if not self.max_watts >= self.min_watts >= 0:
            raise ValueError(
                "a linear model needs max >= min >= 0, got "
                f"min={self.min_watts} max={self.max_watts}"
            )

    @property
    def idle(self) -> float:
        return self.min_watts

    def draw(self, utilisation: float) -> float:
        return self.min_watts + utilisation * (
            self.max_watts - self.min_watts
        )


def instantaneous_power(model: ConsumptionModel, utilisation: float) -> float:
    """Return the power of a model at a utilisation."""
    return model.power(utilisation)
