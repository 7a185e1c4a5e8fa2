"""Scheduling logics, assigning shares within an influence group."""

from sharing.logic.abc import SchedulingLogic
from sharing.logic.equal import EqualSplit
from sharing.logic.maxmin import MaxMinFairness

LOGICS = {logic.name: logic for logic in (MaxMinFairness, EqualSplit)}


def get_logic(name: str) -> SchedulingLogic:
    """Return a new logic from its name.

    Raises:
        KeyError: no logic has this name.

    """
    try:
        return LOGICS[name]()
    except KeyError:
        raise KeyError(f"unknown scheduling logic: {name!r}") from None
