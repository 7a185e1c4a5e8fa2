# Copyright (c) 2023, LE GOFF Vincent
# All rights reserved.

# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are met:

# 1. Redistributions of source code must retain the above copyright notice,
#    this list of conditions and the following disclaimer.

# 2. Redistributions in binary form must reproduce the above copyright notice,
#    this list of conditions and the following disclaimer in the documentation
#    and/or other materials provided with the distribution.

# 3. Neither the name of the copyright holder nor the names of its
#    contributors may be used to endorse or promote products derived from
#    this software without specific prior written permission.

# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
# AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
# IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
# ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS
# BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY,
# OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
# SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
# INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
# CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
# ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED
# OF THE POSSIBILITY OF SUCH DAMAGE.

"""Workloads, replays and their analysis.

```python
trace = generate_trace(SyntheticSpec(task_count=100, max_parallel=10))
result = replay(load_scenario("data/demo.yml"), trace, meter_period=60)
write_report(result, "out")
```

"""

from harness.analysis import (  # noqa: F401
    analyze,
    pairwise_ratios,
    scaling_ratio,
)
from harness.archive import (  # noqa: F401
    load_archive_trace,
    write_archive_trace,
)
from harness.errors import (  # noqa: F401
    AnalysisError,
    HarnessError,
    ScenarioError,
    TraceError,
)
from harness.generator import SyntheticSpec, generate_trace  # noqa: F401
from harness.measurement import RunMeasurement  # noqa: F401
from harness.replay import (  # noqa: F401
    JobRecord,
    Replay,
    ReplayResult,
    replay,
)
from harness.report import load_summary, write_report  # noqa: F401
from harness.scenario import Scenario, load_scenario  # noqa: F401
from harness.trace import Trace, TraceJob  # noqa: F401
