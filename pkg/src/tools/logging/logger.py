"""Logger module."""

from pathlib import Path
import traceback
from typing import Any, Type, TYPE_CHECKING

from tools.logging.abc import LoggerMetaclass
from tools.logging.handler.abc import BaseHandler
from tools.logging.level import Level, LEVELS
from tools.logging.message import Message

if TYPE_CHECKING:
    from clock.base import SimClock


class Logger(metaclass=LoggerMetaclass):

    """A logger class, containing handlers.

    A logger can be bound to a simulation clock (see `bind`), in which
    case every message is stamped with the current simulated tick.

    """

    def __init__(self, name: str, directory: str | Path | None = None):
        self.name = name
        self.handlers = []
        self.sub_loggers = {}
        self.cap_level = None
        self.delayed = []
        self.clock = None
        self.directory = Path(directory) if directory is not None else None

    def bind(self, clock: "SimClock | None") -> None:
        """Bind the logger (and its groups) to a simulation clock.

        Args:
            clock (SimClock or None): the clock giving the simulated
                    time of messages, `None` to unbind.

        """
        self.clock = clock
        for sub in self.sub_loggers.values():
            sub.clock = clock

    def add_handler(
        self,
        cls_handler: Type[BaseHandler],
        level: Level | str,
        batch: Any | None = None,
        format: str | None = None,
        **kwargs,
    ) -> BaseHandler:
        """Add a handler for this logger.

        Args:
            cls_handler (subclass of BaseHandler): the handler class.
            level (Level or str): the handler's level.  The level name
                    can be given as a string (like "warning" or "INFO").
            batch (object, optional): the batch object grouping messages
                    of this handler, if any.
            format (str): the format string for this handler.  If `None`
                    (the default), the handler's default format is used.

        Additional keyword arguments are sent to the handler's `setup`
        method.

        Returns:
            handler (BaseHandler): the newly-created handler.

        """
        handler = cls_handler(self, level=Level.parse(level), format=format)
        if batch is not None:
            batch.handler = handler
            handler.batch = batch

        handler.setup(**kwargs)
        self.handlers.append(handler)
        return handler

    def remove_handlers(self) -> None:
        """Close and remove all handlers."""
        for handler in self.handlers:
            handler.close()

        self.handlers.clear()

    def accepts(self, level: Level) -> bool:
        """Return whether a message of this level would be processed."""
        if self.cap_level is not None:
            return True

        return any(handler.level <= level for handler in self.handlers)

    def setup(self):
        """Set the logger up."""
        if directory := self.directory:
            directory.mkdir(parents=True, exist_ok=True)

    def log(self, level: Level, message: str):
        """Log the message if a handler is found."""
        message = Message.create_for(self, level, message)
        for handler in self.handlers:
            if handler.can_process(level, message):
                handler.process(level, message)

    def exception(self, message: str | None = None) -> None:
        """Log an error message with the traceback.

        Args:
            message (str or None): the message to log.  If not set,
                    just log the traceback.

        """
        message = "" if message is None else message
        message += "\n" + traceback.format_exc().strip()
        self.log(Level.ERROR, message)

    def group(
        self, identifier: Any, cap_level: Level = Level.WARNING
    ) -> "Logger":
        """Create or return a sub-logger for this identifier.

        Messages of a group are kept aside and only written if the
        group logs a message at or above `cap_level`, in which case the
        whole history of the group is written.  This is used to follow
        a single virtual machine without flooding the logs.

        Args:
            identifier (any): the identifier.
            cap_level (level, optional): the level at which messages
                    should be logged and not grouped anymore.

        Returns:
            sub_logger (Logger): a sub-logger.

        """
        if (sub := self.sub_loggers.get(identifier)) is None:
            sub = Logger(f"{self.name}:{identifier}", self.directory)
            sub.cap_level = cap_level
            sub.handlers = self.handlers
            sub.clock = self.clock
            sub.log = sub.delay_log
            self.sub_loggers[identifier] = sub

        return sub

    def forget(self, identifier: Any) -> None:
        """Drop the group of this identifier without logging it."""
        self.sub_loggers.pop(identifier, None)

    def delay_log(self, level: Level, message: str) -> None:
        """Delay log unless the message is at or above the cap level.

        Args:
            level (Level): the message level.
            message (str): the message itself.

        """
        message = Message.create_for(self, level, message)
        self.delayed.append(message)
        if level >= self.cap_level:
            self.log_group()

    def log_group(self):
        """Log all the messages in the group."""
        for message in self.delayed:
            level = LEVELS[message.level]
            for handler in self.handlers:
                if handler.can_process(level, message):
                    handler.process(level, message)

        self.delayed.clear()
