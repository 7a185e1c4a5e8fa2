"""Errors of the energy layer."""


class MeterError(Exception):

    """A meter can't be built or read."""
