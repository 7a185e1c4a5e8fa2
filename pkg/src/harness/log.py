"""Log configuration for the harness."""

from tools.logging.sim import SimLogger

logger = SimLogger("harness")
logger.setup()
