"""Errors of physical and virtual machines."""


class MachineError(Exception):

    """Base class for machine errors."""


class PowerStateError(MachineError):

    """A machine can't change its power state."""


class AllocationError(MachineError):

    """Resources can't be allocated, or an allocation can't be used."""


class UnfitRequest(AllocationError):

    """The request exceeds the total capacity of the machine.

    Unlike a temporary shortage, such a request can never be
    satisfied by this machine.

    """


class VMStateError(MachineError):

    """The operation isn't allowed in the current state of the VM."""
