"""Exact arithmetic for base-s expansions over the redundant digit set {0, ..., r}."""
from .errors import BudgetError, DomainError, RegimeError, UsageError
from .numerals import Params, PeriodicRep, format_rational, parse_rational, value_of

__all__ = [
    "Params",
    "PeriodicRep",
    "value_of",
    "parse_rational",
    "format_rational",
    "DomainError",
    "RegimeError",
    "UsageError",
    "BudgetError",
]
