"""Errors of IaaS services."""


class IaaSError(Exception):

    """Base class for IaaS errors."""


class RequestRejected(IaaSError):

    """A VM request was refused.

    The `reason` attribute says why, in a few words.

    """

    def __init__(self, reason: str):
        super().__init__(f"request rejected: {reason}")
        self.reason = reason


class DeregistrationRefused(IaaSError):

    """A machine or repository is still in use."""
