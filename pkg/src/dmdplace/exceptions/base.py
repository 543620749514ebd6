"""
base.py

Defines the base exception class for all dmdplace errors.

Classes:
    - DmdPlaceError: Base class for all project exceptions. Inherit from this for package-specific problems.

This design lets applications and the CLI reliably catch all dmdplace errors from one root.
"""


class DmdPlaceError(Exception):
    """
    Base exception for all dmdplace errors.

    Args:
        message: Description of the error.
        **context: Optional debug context, kept on ``.context``.
    """
    def __init__(self, message=None, **context):
        if message is None:
            message = "A dmdplace error occurred."
        self.context = context
        super().__init__(message)
