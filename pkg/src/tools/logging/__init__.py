"""Package containing a simple logging system.

Loggers, handlers and batches are defined in sub-modules.  Most modules
only need a preconfigured `SimLogger`:

```python
from tools.logging.sim import SimLogger

logger = SimLogger("sharing")
logger.setup()

logger.bind(clock)  # messages are now stamped with the simulated tick
logger.debug("a debug message")  # skipped unless a handler accepts it
logger.warning("a warning message")
try:
    1 / 0
except Exception:
    logger.exception("Something went wrong:")
```

Messages of a single entity can be grouped with `logger.group(id)`:
they are only written if the group logs a warning or an error.

"""

from tools.logging.batch import SimulatedHour  # noqa: F401
from tools.logging.handler import File, Stream  # noqa: F401
from tools.logging.level import Level  # noqa: F401
from tools.logging.logger import Logger  # noqa: F401
