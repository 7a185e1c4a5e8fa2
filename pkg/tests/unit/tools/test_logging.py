from io import StringIO

import pytest

from tools.logging import File, Level, Logger, SimulatedHour, Stream

FORMAT = "[{level}] {tick}: {message}"


@pytest.fixture
def output():
    return StringIO()


@pytest.fixture
def logger(output):
    logger = Logger("test")
    logger.add_handler(Stream, "info", format=FORMAT, output=output)
    return logger


def test_levels(logger, output):
    """Messages under the handler's level are skipped."""
    logger.debug("hidden")
    logger.info("shown")
    assert output.getvalue() == "[INFO] -: shown\n"
    assert not logger.accepts(Level.DEBUG)


def test_bound_logger(logger, output, clock):
    """Bound loggers stamp messages with the simulated tick."""
    logger.bind(clock)
    clock.jump_time(5)
    logger.warning("late")
    assert output.getvalue() == "[WARNING] 5: late\n"


def test_group(logger, output):
    """Grouped messages are only written with a warning."""
    group = logger.group("vm-1")
    group.debug("created")
    group.info("running")
    assert output.getvalue() == ""
    group.warning("destroyed")
    lines = output.getvalue().splitlines()
    assert lines == [
        "[DEBUG] -: created",
        "[INFO] -: running",
        "[WARNING] -: destroyed",
    ]
    assert logger.group("vm-1") is group


def test_forget(logger, output):
    """Forgotten groups are never written."""
    logger.group("vm-2").debug("created")
    logger.forget("vm-2")
    logger.group("vm-2").warning("again")
    assert output.getvalue() == "[WARNING] -: again\n"


def test_exception(logger, output):
    """Exceptions are logged with their traceback."""
    try:
        1 / 0
    except ZeroDivisionError:
        logger.exception("failed:")

    assert output.getvalue().startswith("[ERROR] -: failed:\n")
    assert "ZeroDivisionError" in output.getvalue()


def test_file_batches(tmp_path, clock):
    """File output is grouped by simulated hour."""
    logger = Logger("sim", directory=tmp_path)
    logger.setup()
    logger.add_handler(
        File, Level.DEBUG, batch=SimulatedHour(), output_file="sim.log"
    )
    logger.bind(clock)
    logger.debug("first")
    logger.debug("second")
    clock.jump_time(clock.to_ticks(3600))
    logger.debug("third")
    logger.remove_handlers()
    lines = (tmp_path / "sim.log").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 5
    assert lines[0] == "-- Simulated hour 0 (tick 0):"
    assert lines[1].endswith("[DEBUG] first")
    assert lines[3] == "-- Simulated hour 1 (tick 3600000):"
    assert lines[4].split()[:2] == ["3600000", "3600.000s"]


def test_parse_levels():
    """Levels are parsed from their names."""
    assert Level.parse("warn") is Level.WARNING
    assert Level.parse(Level.ERROR) is Level.ERROR
    with pytest.raises(KeyError):
        Level.parse("loud")
