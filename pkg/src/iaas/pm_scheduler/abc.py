"""Base class of PM schedulers."""

from abc import ABCMeta, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from iaas.service import IaaSService


class PMScheduler(metaclass=ABCMeta):

    """A PM scheduler, deciding which machines are powered on.

    The service calls `react` when the queue grows, when VMs are
    destroyed and when machines change, at most once per tick.

    """

    name: str

    def __init__(self, service: "IaaSService"):
        self.service = service
        self.actions = 0

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    @abstractmethod
    def react(self) -> int:
        """Switch machines on or off.

        Returns:
            actions (int): the number of power actions issued.

        """
