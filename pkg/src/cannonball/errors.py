"""Exception hierarchy shared by the library and the CLI."""


class CannonballError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CannonballError, ValueError):
    """Malformed or inconsistent user input (bad demands, bad files, bad params)."""


class DomainError(CannonballError, ValueError):
    """A query made outside the domain of the operation."""


class ContractViolation(CannonballError, AssertionError):
    """A precondition of a subroutine was not met by its caller."""


class LemmaViolation(ContractViolation):
    """A structural claim the algorithm relies on did not hold at runtime.

    ``counterexample`` carries a JSON-serializable description of the
    offending configuration.
    """

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
