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

"""Resource sharing.

Spreaders provide or consume processing capacity; consumptions are
units of work flowing from a provider to a consumer.  The kernel
splits the capacity of spreaders between the consumptions using them,
with a pluggable scheduling logic (max-min fairness by default).

```python
kernel = SharingKernel(clock)
cpu = kernel.provider(64.0, "cpu")
vm = kernel.consumer(8.0, "vm")
kernel.register(kernel.create_consumption(8000, 1.0), cpu, vm)
```

"""

from sharing.consumption import (  # noqa: F401
    ConsumptionState,
    ResourceConsumption,
)
from sharing.errors import (  # noqa: F401
    InvariantError,
    RegistrationError,
    SharingError,
)
from sharing.group import InfluenceGroup, direct_group  # noqa: F401
from sharing.kernel import SharingKernel  # noqa: F401
from sharing.logic import (  # noqa: F401
    EqualSplit,
    LOGICS,
    MaxMinFairness,
    SchedulingLogic,
    get_logic,
)
from sharing.spreader import ResourceSpreader, Role  # noqa: F401
