"""Log configuration for the IaaS services and their schedulers."""

from tools.logging.sim import SimLogger

logger = SimLogger("iaas")
logger.setup()
