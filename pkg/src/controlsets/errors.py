"""Exception hierarchy shared across the toolkit.

``InputError`` covers everything a caller can fix (bad files, out-of-range
parameters, exceeded enumeration budgets).  ``InternalCheckError`` means an
internal invariant failed and indicates a bug, not a usage problem; the CLI
maps the two families to exit codes 1 and 2.
"""


class ControlSetsError(Exception):
    """Base class for all toolkit errors."""


class InputError(ControlSetsError):
    """Invalid input: malformed file, bad parameter, violated precondition."""


class BudgetError(InputError):
    """An exhaustive computation would exceed its documented size budget."""


class InternalCheckError(ControlSetsError):
    """An internal consistency check failed; this signals a bug."""
