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

"""Project settings, loaded by dynaconf.

Settings are read from `config/settings.toml` at the root of the
repository (the `[default]` environment), then from an optional
`config/settings.local.toml`, then from environment variables prefixed
with `NIMBUSIM_` (for instance `NIMBUSIM_TICK_SECONDS=0.01`).

Library code only reads defaults from here: every constructor accepts
explicit values.

```python
from tools.settings import settings
settings.TICK_SECONDS  # 0.001 unless overridden
```

"""

from pathlib import Path

from dynaconf import Dynaconf, Validator

ROOT = Path(__file__).resolve().parents[2]
CONFIG = ROOT / "config"

settings = Dynaconf(
    envvar_prefix="NIMBUSIM",
    environments=True,
    settings_files=[
        str(CONFIG / "settings.toml"),
        str(CONFIG / "settings.local.toml"),
    ],
    validators=[
        Validator("TICK_SECONDS", must_exist=True, default=0.001, gt=0),
        Validator("COMPLETION_TOLERANCE", default=1e-9, gt=0, lt=1),
        Validator("METER_PERIOD_SECONDS", default=60, gt=0),
        Validator(
            "VM_SCHEDULER",
            default="first-fit-basic",
            is_in=[
                "first-fit-basic",
                "first-fit-nonqueuing",
                "first-fit-minfirst",
            ],
        ),
        Validator(
            "PM_SCHEDULER",
            default="pm-always-on",
            is_in=["pm-always-on", "pm-on-demand"],
        ),
        Validator("PM_GRACE_SECONDS", default=30, gte=0),
        Validator("ALLOCATION_EXPIRY_SECONDS", default=60, gt=0),
        Validator("STRICT_ALLOCATIONS", default=True, is_type_of=bool),
        Validator(
            "IMAGE_HOSTING", default="local", is_in=["local", "central"]
        ),
        Validator("DEFAULT_IMAGE_SIZE", default=100_000_000, gt=0),
        Validator("DEFAULT_BOOT_SECONDS", default=1.0, gte=0),
        Validator("DEFAULT_VM_MEMORY", default=1_000_000_000, gt=0),
        Validator(
            "LOG_LEVEL",
            default="WARNING",
            is_in=["DEBUG", "INFO", "WARNING", "WARN", "ERROR"],
        ),
        Validator("TICK_BUDGET", default=10**12, gt=0),
    ],
)
