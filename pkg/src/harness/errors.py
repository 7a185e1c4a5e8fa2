"""Errors of the harness."""


class HarnessError(Exception):

    """Base class for harness errors."""


class TraceError(HarnessError):

    """A trace can't be read or is empty."""


class ScenarioError(HarnessError):

    """A scenario can't be loaded or built."""


class AnalysisError(HarnessError):

    """Measurements can't be compared."""
