"""Errors of the sharing kernel."""


class SharingError(Exception):

    """Base class for sharing errors."""


class RegistrationError(SharingError):

    """A consumption can't be registered."""


class InvariantError(SharingError):

    """The kernel reached an inconsistent state.

    This is a bug, not a user error: for instance, a consumption was
    asked to progress before any share was assigned to it.

    """
