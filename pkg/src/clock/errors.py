"""Errors raised by the simulation clock."""


class ClockError(Exception):

    """Base class for clock errors."""


class TimeJumpError(ClockError):

    """A time jump would skip events.

    The earliest conflicting tick is kept in `conflict`.

    """

    def __init__(self, conflict: int, target: int):
        self.conflict = conflict
        self.target = target
        super().__init__(
            f"cannot jump to tick {target}: an event is due at "
            f"tick {conflict}"
        )


class HandlerError(ClockError):

    """A handler raised an exception while firing."""

    def __init__(self, tick: int, handler, error: Exception):
        self.tick = tick
        self.handler = handler
        self.error = error
        super().__init__(
            f"handler {handler!r} failed at tick {tick}: "
            f"{type(error).__name__}: {error}"
        )
