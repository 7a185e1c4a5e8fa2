"""Log message, stamped with wall-clock and simulated time."""

from dataclasses import dataclass
from datetime import datetime
from typing import TYPE_CHECKING

from tools.logging.level import Level

if TYPE_CHECKING:
    from tools.logging.logger import Logger


@dataclass
class Message:

    """A log message.

    Besides the wall-clock time of emission, a message records the
    simulated tick of the clock its logger is bound to.  Unbound loggers
    (the launcher, for instance) use "-" as tick.

    """

    time: datetime
    logger: str
    level: str
    message: str
    clock: str
    tick: str
    sim_seconds: str
    sim_hour: int | None

    @classmethod
    def create_for(cls, logger: "Logger", level: Level, message: str):
        """Create a new Message for this logger."""
        time = datetime.now()
        clock = time.strftime("%H:%M:%S")
        tick, sim_seconds, sim_hour = "-", "-", None
        if (sim_clock := logger.clock) is not None:
            seconds = sim_clock.now_seconds
            tick = str(sim_clock.current_tick)
            sim_seconds = f"{seconds:.3f}"
            sim_hour = int(seconds // 3600)

        return cls(
            time=time,
            logger=logger.name,
            level=level.name,
            message=message,
            clock=clock,
            tick=tick,
            sim_seconds=sim_seconds,
            sim_hour=sim_hour,
        )
