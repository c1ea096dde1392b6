#!/usr/bin/env python3
"""
Error handling utilities for PrecedentCLI tools.
Provides consistent error handling and messaging across the PrecedentCLI suite.

This module offers standardized error handling for:
- File system operations
- Case-base validation failures
- Enumeration caps
- Configuration errors
- Internal consistency failures

Each handler returns both a user-friendly message and a standardized error code
of the form ``category:reason``; ``exit_code_for`` maps the category to the
process exit status.
"""

from pathlib import Path
from typing import Dict, Tuple, Union

from precedent.errors import (
    CapExceededError,
    CaseBaseValidationError,
    InternalConsistencyError,
    PrecedentError,
    UnknownArgumentError,
    UnknownCaseError,
    UnknownFactorError,
)

from .output import Output

EXIT_OK = 0
EXIT_ORACLE_MISMATCH = 1
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_CAP = 4
EXIT_INTERNAL = 70

EXIT_CODES: Dict[str, int] = {
    "oracle": EXIT_ORACLE_MISMATCH,
    "validation": EXIT_VALIDATION,
    "usage": EXIT_VALIDATION,
    "config": EXIT_VALIDATION,
    "file": EXIT_IO,
    "cap": EXIT_CAP,
    "internal": EXIT_INTERNAL,
}


def exit_code_for(error_code: str) -> int:
    """
    Map an error code to the documented exit status.

    Args:
        error_code: A ``category:reason`` code returned by a handler

    Returns:
        The exit status for the category (internal failure for unknown ones)
    """
    category = error_code.split(":", 1)[0]
    return EXIT_CODES.get(category, EXIT_INTERNAL)


class ErrorHandler:
    """
    Handles errors consistently across PrecedentCLI tools.

    Typical usage:
        error_handler = ErrorHandler(output)
        try:
            case_base = load_case_base(path)
        except Exception as e:
            msg, code = error_handler.handle_exception(path, e)
            sys.exit(exit_code_for(code))
    """

    def __init__(self, output: Output):
        self.output = output

    def _handle_generic(
        self, context: str, exception: Exception, prefix: str = "error"
    ) -> Tuple[str, str]:
        """
        Generic error handler for any exception.

        Args:
            context: Description of what was being attempted
            exception: The exception that was raised
            prefix: Prefix for the error code

        Returns:
            Tuple of (error_message, error_code)
        """
        exception_name = type(exception).__name__
        msg = f"{context}: {exception}"
        code = f"{prefix}:{exception_name}"
        self.output.error(msg)
        return msg, code

    def handle_file_operation(
        self, path: Path, exception: Exception, operation: str = "read"
    ) -> Tuple[str, str]:
        """
        Handle errors when working with files.

        Args:
            path: The file that was being operated on
            exception: The exception that was raised
            operation: The operation being performed (read, write, ...)

        Returns:
            Tuple containing (error_message, error_code)
        """
        filename = Path(path).name

        if isinstance(exception, PermissionError):
            msg = f"Failed to {operation} {filename}: Permission denied."
            code = "file:permission_denied"
        elif isinstance(exception, FileNotFoundError):
            msg = f"Failed to {operation} {filename}: File not found."
            code = "file:not_found"
        elif isinstance(exception, IsADirectoryError):
            msg = f"Failed to {operation} {filename}: Is a directory, not a file."
            code = "file:is_directory"
        else:
            return self._handle_generic(
                f"Failed to {operation} {filename}", exception, "file"
            )

        self.output.error(msg)
        return msg, code

    def handle_validation_error(
        self, source: Union[str, Path], exception: CaseBaseValidationError
    ) -> Tuple[str, str]:
        """
        Report every violation of an invalid case base.

        Args:
            source: The file (or description) that failed validation
            exception: The aggregated validation error

        Returns:
            Tuple containing (error_message, error_code)
        """
        count = len(exception.violations)
        plural = "s" if count != 1 else ""
        msg = f"Invalid case base {Path(source).name}: {count} violation{plural}"
        self.output.error(msg)
        for violation in exception.violations:
            self.output.error(f"  {violation}")
        return msg, "validation:invalid_case_base"

    def handle_lookup_error(self, exception: PrecedentError) -> Tuple[str, str]:
        """Handle references to undeclared factors, cases or arguments."""
        if isinstance(exception, UnknownFactorError):
            code = "validation:unknown_factor"
        elif isinstance(exception, UnknownCaseError):
            code = "validation:unknown_case"
        else:
            code = "validation:unknown_argument"
        msg = str(exception)
        self.output.error(msg)
        return msg, code

    def handle_cap_error(self, exception: CapExceededError) -> Tuple[str, str]:
        msg = f"{exception} (raise it with --cap or the [caps] config section)"
        self.output.error(msg)
        return msg, "cap:exceeded"

    def handle_internal_error(self, exception: Exception) -> Tuple[str, str]:
        msg = f"Internal consistency check failed: {exception}"
        self.output.error(msg)
        return msg, "internal:inconsistency"

    def handle_config_error(
        self, config_path: Union[str, Path], exception: Exception
    ) -> Tuple[str, str]:
        """
        Handle errors related to configuration files.

        Args:
            config_path: Path to the configuration file
            exception: The exception that was raised

        Returns:
            Tuple containing (error_message, error_code)
        """
        filename = Path(config_path).name

        if isinstance(exception, FileNotFoundError):
            msg = f"Configuration file not found: {filename}"
            code = "config:not_found"
        elif isinstance(exception, PermissionError):
            msg = f"Permission denied when reading configuration file: {filename}"
            code = "config:permission_denied"
        elif "TOMLDecodeError" in str(type(exception)) or "TomlDecodeError" in str(
            type(exception)
        ):
            msg = f"Invalid TOML in configuration file: {filename}"
            code = "config:invalid_toml"
        else:
            return self._handle_generic(
                f"Error in configuration file {filename}", exception, "config"
            )

        self.output.error(msg)
        return msg, code

    def handle_exception(
        self, source: Union[str, Path], exception: Exception
    ) -> Tuple[str, str]:
        """
        Dispatch any exception raised while running a command.

        Args:
            source: The case-base file the command was working on
            exception: The exception that was raised

        Returns:
            Tuple containing (error_message, error_code)
        """
        if isinstance(exception, CaseBaseValidationError):
            return self.handle_validation_error(source, exception)
        if isinstance(
            exception, (UnknownFactorError, UnknownCaseError, UnknownArgumentError)
        ):
            return self.handle_lookup_error(exception)
        if isinstance(exception, CapExceededError):
            return self.handle_cap_error(exception)
        if isinstance(exception, InternalConsistencyError):
            return self.handle_internal_error(exception)
        if isinstance(exception, OSError):
            return self.handle_file_operation(Path(source), exception)
        return self._handle_generic(f"Unexpected error on {source}", exception, "internal")
