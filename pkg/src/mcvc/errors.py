"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed instance data or invalid parameters."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Unsupported(InputError):
    """The requested combination of input and algorithm is not supported."""


class UnsupportedMatroid(Unsupported):
    """The requested operation does not support this matroid kind."""


class ContractError(RuntimeError):
    """A caller broke an operation's precondition (e.g. circuit of an independent set)."""


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, cap: int):
        self.cap = cap
        super().__init__(f"{what} exceeded the budget cap of {cap}")


class WitnessInvariantError(AssertionError):
    """An internal invariant of the robust-witness construction failed."""
