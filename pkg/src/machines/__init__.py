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

"""Physical and virtual machines.

```python
pm = build_machine(kernel, "pm-1", ResourceVector(64, 1.0, 256 * GB),
                   bandwidth=125_000, disk_capacity=5 * TB)
pm.turn_on()
...  # once running
allocation = pm.allocate(ResourceVector(4, 1.0, 8 * GB))
vm = deploy_vm(allocation, image, central)
```

"""

from machines.allocation import ResourceAllocation  # noqa: F401
from machines.errors import (  # noqa: F401
    AllocationError,
    MachineError,
    PowerStateError,
    UnfitRequest,
    VMStateError,
)
from machines.hidden import HiddenScript  # noqa: F401
from machines.physical import PhysicalMachine, build_machine  # noqa: F401
from machines.profiles import (  # noqa: F401
    PMState,
    PowerProfile,
    PROFILES,
    ScriptStep,
    complex_profile,
    instant_profile,
    simplified_profile,
)
from machines.resources import ResourceVector  # noqa: F401
from machines.virtual import (  # noqa: F401
    TRANSITIONS,
    VMImage,
    VMState,
    VirtualMachine,
    deploy_vm,
)
