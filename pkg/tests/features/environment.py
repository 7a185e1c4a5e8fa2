import sys
from pathlib import Path

SRC = Path(__file__).parents[2] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from clock import SimClock  # noqa: E402
from machines import VMImage  # noqa: E402
from network import NetworkNode, Repository  # noqa: E402
from sharing import SharingKernel  # noqa: E402

GB = 1_000_000_000


def before_scenario(context, scenario):
    """Run before every scenario."""
    context.clock = SimClock(tick_seconds=0.001)
    context.kernel = SharingKernel(context.clock)
    node = NetworkNode(context.kernel, "central", 10_000_000.0, 10_000_000.0)
    context.central = Repository("central", 10_000 * GB, node)
    context.image = VMImage("image", 1_000_000)
    context.central.register_object(context.image.stored)
    context.requests = {}
    context.cloud = None


def after_scenario(context, scenario):
    """Run after every scenario."""
    context.requests.clear()
