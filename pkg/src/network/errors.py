"""Errors of the network and storage layer."""


class TransferError(Exception):

    """Base class for transfer errors."""


class MissingObject(TransferError):

    """The object to transfer isn't in the source repository."""


class InsufficientSpace(TransferError):

    """The target repository can't hold the object."""


class Unconnected(TransferError):

    """The two nodes aren't directly connected."""
