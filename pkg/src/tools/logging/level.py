"""Log levels."""

from enum import IntEnum


class Level(IntEnum):

    """Priority levels for logging."""

    DEBUG = 1
    INFO = 2
    WARNING = WARN = 3
    ERROR = 4

    @classmethod
    def parse(cls, value: "Level | str") -> "Level":
        """Return a level from a level or a level name.

        Args:
            value (Level or str): the level, or its name (case
                    doesn't matter, "warn" and "WARNING" are the same).

        Returns:
            level (Level): the matching level.

        Raises:
            KeyError: the name doesn't match any level.

        """
        if isinstance(value, cls):
            return value

        try:
            return cls.__members__[str(value).upper()]
        except KeyError:
            raise KeyError(f"invalid level: {value!r}") from None


LEVELS = {level.name: level for level in Level}
