"""Base handler."""

from abc import ABCMeta, abstractmethod
from dataclasses import asdict
from typing import Any, TYPE_CHECKING

from tools.logging.level import Level
from tools.logging.message import Message

if TYPE_CHECKING:
    from tools.logging.logger import Logger


class BaseHandler(metaclass=ABCMeta):

    """A basic handler, writing formatted messages somewhere."""

    default_format = "[{level}] {message}"

    def __init__(
        self,
        logger: "Logger",
        level: Level,
        batch: Any | None = None,
        format: str | None = None,
    ):
        self.logger = logger
        self.level = level
        self.batch = batch
        self.format = self.default_format if format is None else format

    @abstractmethod
    def setup(self, **kwargs) -> None:
        """Configure the handler."""

    @abstractmethod
    def write(self, text: str) -> None:
        """Write a formatted line, ending with a newline."""

    def close(self) -> None:
        """Release whatever the handler holds."""

    def render(self, message: str | Message) -> str:
        """Format a message and make sure it ends with a newline."""
        if isinstance(message, Message):
            message = self.format.format(**asdict(message))

        if not message.endswith("\n"):
            message += "\n"

        return message

    def always_log(self, message: str | Message) -> None:
        """Log this message, no matter its level."""
        self.write(self.render(message))

    def can_process(self, level: Level, message: Message) -> bool:
        """Return whether this handler can process this log message.

        By default, it only compares its level with the message's level.

        Args:
            level (Level): the log level.
            message (Message): the message to log.

        Returns:
            can_process (bool): whether this handler can process
                    this message.

        """
        return self.level <= level

    def process(self, level: Level, message: Message) -> None:
        """Process the log message, opening a new batch if needed."""
        if (batch := self.batch) is not None:
            if not batch.should_batch(message):
                batch.new_batch(message)

        self.write(self.render(message))
