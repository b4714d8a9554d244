"""Error types shared across the package.

InputError covers unreadable or malformed input files; ValidationError covers
inputs that parse but violate a domain invariant (referential integrity,
value bounds, calendar consistency). The CLI maps them to exit codes 2 and 1.
"""


class InputError(Exception):
    """An input file is missing, unreadable, or structurally malformed."""


class ValidationError(Exception):
    """Parsed input violates a domain invariant."""
