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

"""IaaS services.

```python
cloud = IaaSService(kernel, vm_scheduler="first-fit-minfirst",
                    pm_scheduler="pm-on-demand")
cloud.register_repository(central)
for pm in machines:
    cloud.register_pm(pm)

request = cloud.request_vms(image, ResourceVector(1, 1.0, GB), count=2)
```

"""

from iaas.errors import (  # noqa: F401
    DeregistrationRefused,
    IaaSError,
    RequestRejected,
)
from iaas.events import KINDS, Event, EventSubscription  # noqa: F401
from iaas.pm_scheduler import (  # noqa: F401
    AlwaysOn,
    OnDemand,
    PM_SCHEDULERS,
    PMScheduler,
)
from iaas.request import RequestState, VMRequest  # noqa: F401
from iaas.service import IaaSService, ServiceState  # noqa: F401
from iaas.vm_scheduler import (  # noqa: F401
    BasicFirstFit,
    MinFirstFit,
    NonQueuingFirstFit,
    VM_SCHEDULERS,
    VMScheduler,
)
