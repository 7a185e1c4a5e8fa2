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

"""The launcher, behind the `nimbusim` command.

Each sub-command runs in the current process and exits:

    nimbusim generate --tasks 1000 --parallel 100 trace.swf
    nimbusim replay trace.swf --scenario data/demo.yml --output out
    nimbusim analyze out-1k/summary.yml out-10k/summary.yml

Errors are logged and give an exit status of 1.

"""

import argparse
from pathlib import Path

from harness import (
    HarnessError,
    SyntheticSpec,
    analyze,
    generate_trace,
    load_archive_trace,
    load_scenario,
    replay,
    write_archive_trace,
    write_report,
)
from tools.logging.sim import SimLogger

parser = argparse.ArgumentParser(prog="nimbusim")
parser.set_defaults(action="help")
subparsers = parser.add_subparsers()
sub_generate = subparsers.add_parser(
    "generate", help="generate a synthetic trace"
)
sub_generate.set_defaults(action="generate")
sub_generate.add_argument("output", help="the trace file to write")
sub_generate.add_argument(
    "--tasks", type=int, default=1000, help="the number of tasks"
)
sub_generate.add_argument(
    "--parallel",
    type=int,
    default=100,
    help="the number of tasks submitted together",
)
sub_generate.add_argument(
    "--spread",
    type=float,
    default=10.0,
    help="seconds over which a burst of tasks is submitted",
)
sub_generate.add_argument(
    "--min-length", type=float, default=10.0, help="shortest task, seconds"
)
sub_generate.add_argument(
    "--max-length", type=float, default=90.0, help="longest task, seconds"
)
sub_generate.add_argument(
    "--cores", type=int, default=1, help="the cores of each task"
)
sub_generate.add_argument("--seed", type=int, default=0, help="random seed")
sub_replay = subparsers.add_parser(
    "replay", help="replay a trace on a simulated cloud"
)
sub_replay.set_defaults(action="replay")
sub_replay.add_argument("trace", help="the trace file")
sub_replay.add_argument(
    "--scenario", help="the scenario file (the default scenario if not set)"
)
sub_replay.add_argument(
    "--output", default="output", help="the report directory"
)
sub_replay.add_argument(
    "--meter-period",
    type=float,
    help="metering period in seconds (no metering if not set)",
)
sub_replay.add_argument(
    "--limit", type=int, help="replay only the first jobs of the trace"
)
sub_replay.add_argument(
    "--seed",
    type=int,
    help="generate a synthetic trace with this seed instead of reading "
    "the trace file, which is then written",
)
sub_replay.add_argument("--log-dir", help="write full debug logs here")
sub_analyze = subparsers.add_parser(
    "analyze", help="compute scaling ratios of replays"
)
sub_analyze.set_defaults(action="analyze")
sub_analyze.add_argument(
    "summaries", nargs="+", help="the summary files of the replays"
)


class Launcher:

    """Parse the command line and run the action."""

    def __init__(self):
        self.logger = SimLogger("launcher")
        self.logger.setup()

    def run(self, argv: list[str] | None = None) -> int:
        """Run the command, return the exit status."""
        args = parser.parse_args(argv)
        method = getattr(self, f"action_{args.action}", None)
        if method is None:
            parser.print_help()
            return 0

        try:
            method(args)
        except (HarnessError, ValueError, OSError) as err:
            self.logger.error(str(err))
            return 1
        except Exception:
            self.logger.exception("An unexpected error occurred:")
            return 1

        return 0

    def action_generate(self, args: argparse.Namespace) -> None:
        """Generate a trace file."""
        trace = generate_trace(self._spec(args))
        write_archive_trace(trace, args.output)
        print(f"{len(trace)} tasks written to {args.output}")

    def action_replay(self, args: argparse.Namespace) -> None:
        """Replay a trace and write its report."""
        if args.log_dir:
            SimLogger.write_all_to(args.log_dir)

        scenario = load_scenario(args.scenario)
        if args.seed is not None:
            spec = SyntheticSpec(
                task_count=args.limit or 1000,
                max_parallel=min(args.limit or 100, 100),
                spread=10.0,
                seed=args.seed,
            )
            trace = generate_trace(spec)
            write_archive_trace(trace, args.trace)
        else:
            trace = load_archive_trace(
                args.trace, args.limit, scenario.largest_cores
            )

        if trace.filtered:
            print(f"{trace.filtered} job(s) filtered out (too wide)")

        result = replay(scenario, trace, args.meter_period)
        summary = write_report(result, args.output)
        measurement = result.measurement
        print(
            f"{measurement.completed}/{measurement.task_count} jobs done, "
            f"simulated {measurement.simulated_seconds:.3f}s "
            f"in {measurement.wall_seconds:.3f}s"
        )
        if measurement.energy_joules is not None:
            print(f"energy: {measurement.energy_joules:.1f} J")

        print(f"summary written to {summary}")

    def action_analyze(self, args: argparse.Namespace) -> None:
        """Print the scaling ratios between summaries."""
        print(analyze(Path(path) for path in args.summaries))

    @staticmethod
    def _spec(args: argparse.Namespace) -> SyntheticSpec:
        return SyntheticSpec(
            task_count=args.tasks,
            max_parallel=args.parallel,
            spread=args.spread,
            length_range=(args.min_length, args.max_length),
            cores=args.cores,
            seed=args.seed,
        )
