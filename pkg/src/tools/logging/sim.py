"""The simulation logger, already configured for most use cases."""

from pathlib import Path

from tools.logging.batch import SimulatedHour
from tools.logging.handler import File, Stream
from tools.logging.level import Level
from tools.logging.logger import Logger
from tools.settings import settings

STREAM_FORMAT = "[{level}] {tick}: {message}"


class SimLogger(Logger):

    """Simulation logger.

    By default, only writes to the standard error stream, at the level
    configured in `LOG_LEVEL`.  Call `write_to` to keep a full debug log
    in a directory, one file per logger.

    Every simulation logger is kept in `SimLogger.instances`, so that
    a run can bind them all to its clock at once.

    """

    instances: dict[str, "SimLogger"] = {}

    def __init__(self, name: str):
        super().__init__(name)
        SimLogger.instances[name] = self

    def setup(self):
        """Set up the stream handler."""
        super().setup()
        self.add_handler(Stream, settings.LOG_LEVEL, format=STREAM_FORMAT)

    def write_to(self, directory: str | Path) -> None:
        """Also write every message to `<directory>/<name>.log`.

        Args:
            directory (str or Path): the log directory.

        """
        self.directory = Path(directory)
        super().setup()
        self.add_handler(
            File,
            Level.DEBUG,
            batch=SimulatedHour(),
            output_file=f"{self.name}.log",
        )

    @classmethod
    def bind_all(cls, clock) -> None:
        """Bind every simulation logger to a clock."""
        for logger in cls.instances.values():
            logger.bind(clock)

    @classmethod
    def write_all_to(cls, directory: str | Path) -> None:
        """Make every simulation logger write to a directory."""
        for logger in cls.instances.values():
            logger.write_to(directory)
