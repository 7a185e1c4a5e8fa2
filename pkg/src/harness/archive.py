"""Archive traces, in the standard workload format.

Rows are whitespace-separated; only the first five columns are read:

    1. job id
    2. submit time (seconds)
    3. wait time (ignored)
    4. runtime (seconds)
    5. allocated processors

Lines starting with `;` (header comments) or `#` are skipped.  Rows
with a missing column, a value that isn't a number, a runtime or a
processor count that isn't positive are reported with their line
number and skipped.

"""

from pathlib import Path

from harness.errors import TraceError
from harness.log import logger
from harness.trace import Trace, TraceJob


def load_archive_trace(
    path: Path | str,
    limit: int | None = None,
    max_cores: int | None = None,
) -> Trace:
    """Load jobs from an archive trace.

    Args:
        path (Path or str): the trace file.
        limit (int, optional): the maximum number of jobs to keep.
        max_cores (int, optional): jobs needing more cores than this
                (the largest machine) are filtered out and counted.

    Returns:
        trace (Trace): the jobs, submit times relative to the first.

    Raises:
        TraceError: the file can't be read or has no usable job.

    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as err:
        raise TraceError(f"cannot read {path}: {err}") from None

    jobs = []
    malformed = []
    filtered = 0
    for number, line in enumerate(lines, start=1):
        if limit is not None and len(jobs) >= limit:
            break

        line = line.strip()
        if not line or line.startswith((";", "#")):
            continue

        fields = line.split()
        try:
            job_id, submit, _, runtime, cores = fields[:5]
            job = TraceJob(job_id, float(submit), float(runtime), int(cores))
        except ValueError as err:
            logger.warning(f"{path}:{number}: skipped ({err})")
            malformed.append(number)
            continue

        if max_cores is not None and job.cores > max_cores:
            filtered += 1
            continue

        jobs.append(job)

    if not jobs:
        raise TraceError(f"{path} holds no usable job")

    if filtered:
        logger.info(f"{path}: {filtered} job(s) too wide for any machine")

    first = min(job.submit for job in jobs)
    if first:
        jobs = [
            TraceJob(job.id, job.submit - first, job.runtime, job.cores)
            for job in jobs
        ]

    return Trace(jobs, str(path), filtered, malformed)


def write_archive_trace(trace: Trace, path: Path | str) -> None:
    """Write a trace in the columns `load_archive_trace` reads.

    Columns the replay doesn't use are written as -1.

    """
    path = Path(path)
    with path.open("w", encoding="utf-8") as file:
        file.write(f"; {trace.source}, {len(trace)} jobs\n")
        for job in trace:
            file.write(
                f"{job.id} {job.submit!r} -1 {job.runtime!r} {job.cores}\n"
            )
