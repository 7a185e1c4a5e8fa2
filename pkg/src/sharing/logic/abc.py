"""Base class of scheduling logics."""

from abc import ABCMeta, abstractmethod
from typing import Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from sharing.consumption import ResourceConsumption


class SchedulingLogic(metaclass=ABCMeta):

    """Assign per-tick shares to the consumptions of one group.

    A logic receives the registered consumptions of a single influence
    group, ordered by id, and sets their `provider_share` and
    `consumer_share`.  It must only read the consumptions and the
    capacity of their spreaders: the result is a function of this
    snapshot.  No spreader may be given more than its capacity, and no
    share may be negative or above the consumption's limit.

    """

    name: str = ""

    @abstractmethod
    def assign(self, consumptions: Sequence["ResourceConsumption"]) -> None:
        """Assign shares to these consumptions."""

    def __repr__(self):
        return f"<{type(self).__name__} {self.name!r}>"
