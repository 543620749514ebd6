"""
system.py

This module provides exceptions for file-system and pipeline failures.

Classes:
    - ArtifactError: Base exception for reading or writing artifacts.
    - ArtifactWriteError: Raised when an output file cannot be written.
    - ConfigFileError: Raised when a config document cannot be read or parsed.
    - StageError: Wraps the first failing pipeline stage.

These exceptions make environment issues explicit and keep the failing stage visible.
"""
from .base import DmdPlaceError


class ArtifactError(DmdPlaceError):
    """
    General exception for artifact I/O in dmdplace.
    Args:
        message: Description of the error.
        **context: Diagnostic metadata.
    """
    def __init__(self, message=None, **context):
        if message is None:
            message = "An artifact I/O error occurred."
        super().__init__(message, **context)


class ArtifactWriteError(ArtifactError):
    """
    Raised when an artifact cannot be written.
    Args:
        path: Target path.
        reason: Underlying error text.
    """
    def __init__(self, path=None, reason=None, message=None):
        if message is None:
            message = f"Cannot write artifact '{path}': {reason or 'unknown error'}."
        super().__init__(message, path=path, reason=reason)
        self.path = path


class ConfigFileError(ArtifactError):
    """
    Raised when a config document is missing or is not valid JSON.
    Args:
        path: Config path.
        reason: Underlying error text.
    """
    def __init__(self, path=None, reason=None, message=None):
        if message is None:
            message = f"Cannot load config '{path}': {reason or 'unknown error'}."
        super().__init__(message, path=path, reason=reason)
        self.path = path


class StageError(DmdPlaceError):
    """
    Raised by the CLI pipeline when a stage fails; carries the stage name.
    Args:
        stage: Stage name (simulate, identify, place, iterate, evaluate, ...).
        cause: Original exception.
    """
    def __init__(self, stage, cause=None, message=None):
        if message is None:
            message = f"Stage '{stage}' failed: {cause}"
        super().__init__(message, stage=stage)
        self.stage = stage
        self.cause = cause
