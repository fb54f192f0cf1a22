"""Exception types shared by every module and mapped to CLI exit codes."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation (e.g. x > x_max)."""


class RegimeError(DomainError):
    """A closed-form value is requested outside the (s, r) regime where it holds."""


class UsageError(ValueError):
    """The call itself is malformed: mismatched params, missing neighbour, bad syntax."""


class BudgetError(RuntimeError):
    """A configured size budget (depth, sample exponent, state count) was exceeded."""
