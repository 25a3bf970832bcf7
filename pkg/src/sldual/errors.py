"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all structured errors raised by this package."""


class InvalidStructure(WorkbenchError):
    """A value failed validation against one of its defining laws.

    ``law`` names the violated law, ``witness`` carries the offending
    elements (indices into the relevant carrier).
    """

    def __init__(self, message, law=None, witness=None):
        super().__init__(message)
        self.law = law
        self.witness = witness


class CarrierMismatch(WorkbenchError):
    """Two values that must share a carrier do not."""


class UnverifiedSpace(WorkbenchError):
    """An operation demanded a space whose axiom check has not passed."""

    def __init__(self, message, skipped=False):
        super().__init__(message)
        self.skipped = skipped


class CertificationError(WorkbenchError):
    """An operation demanded a relation certificate that is absent or negative."""


class BudgetExhausted(WorkbenchError):
    """A rejection-sampling budget or size guard ran out."""


class InputError(WorkbenchError):
    """External input (JSON file, CLI argument) could not be interpreted."""

    def __init__(self, message, context=None):
        super().__init__(message)
        self.context = context
