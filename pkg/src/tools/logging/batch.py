"""Batch grouping file output by simulated hour."""

from dataclasses import asdict
from typing import TYPE_CHECKING

from tools.logging.message import Message

if TYPE_CHECKING:
    from tools.logging.handler.abc import BaseHandler

DEFAULT_FORMAT = "-- Simulated hour {sim_hour} (tick {tick}):"


class SimulatedHour:

    """Batch to group messages by simulated hour.

    When a message belongs to a simulated hour different from the
    previous one, a header line is written before it.  Messages of
    unbound loggers never open a new batch.

    """

    def __init__(self, format: str = DEFAULT_FORMAT):
        self.handler: "BaseHandler | None" = None
        self.last_hour = None
        self.new_batch_message = format

    def should_batch(self, message: Message) -> bool:
        """Return whether this message belongs to the current batch."""
        if message.sim_hour is None:
            return True

        return self.last_hour == message.sim_hour

    def new_batch(self, message: Message) -> None:
        """Open a new batch, starting with this message.

        Args:
            message (Message): the first message in the new batch.

        """
        self.last_hour = message.sim_hour
        self.handler.always_log(
            self.new_batch_message.format(**asdict(message))
        )
