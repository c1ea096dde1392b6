#!/usr/bin/env python3
"""
Tests for the ErrorHandler shared utility.
"""
import unittest
from pathlib import Path
from unittest.mock import MagicMock

from precedent.errors import (
    CapExceededError,
    CaseBaseValidationError,
    InternalConsistencyError,
    UnknownArgumentError,
    UnknownCaseError,
    UnknownFactorError,
)
from shared.error_handler import (
    EXIT_CAP,
    EXIT_INTERNAL,
    EXIT_IO,
    EXIT_ORACLE_MISMATCH,
    EXIT_VALIDATION,
    ErrorHandler,
    exit_code_for,
)
from shared.output import Output


class TestExitCodes(unittest.TestCase):
    def test_categories(self):
        self.assertEqual(exit_code_for("oracle:mismatch"), EXIT_ORACLE_MISMATCH)
        self.assertEqual(exit_code_for("validation:unknown_factor"), EXIT_VALIDATION)
        self.assertEqual(exit_code_for("usage:invalid_arguments"), EXIT_VALIDATION)
        self.assertEqual(exit_code_for("config:not_found"), EXIT_VALIDATION)
        self.assertEqual(exit_code_for("file:not_found"), EXIT_IO)
        self.assertEqual(exit_code_for("cap:exceeded"), EXIT_CAP)
        self.assertEqual(exit_code_for("internal:inconsistency"), EXIT_INTERNAL)

    def test_documented_values(self):
        self.assertEqual(
            (EXIT_ORACLE_MISMATCH, EXIT_VALIDATION, EXIT_IO, EXIT_CAP, EXIT_INTERNAL),
            (1, 2, 3, 4, 70),
        )

    def test_unknown_category_is_internal(self):
        self.assertEqual(exit_code_for("network:timeout"), EXIT_INTERNAL)
        self.assertEqual(exit_code_for("nonsense"), EXIT_INTERNAL)


class TestErrorHandler(unittest.TestCase):
    """Tests for the ErrorHandler utility."""

    def setUp(self):
        """Set up the test environment."""
        self.mock_output = MagicMock(spec=Output)
        self.error_handler = ErrorHandler(self.mock_output)

    def test_init(self):
        self.assertEqual(self.error_handler.output, self.mock_output)

    def test_handle_generic(self):
        msg, code = self.error_handler._handle_generic(
            "testing context", ValueError("Test error")
        )
        self.assertEqual(msg, "testing context: Test error")
        self.assertEqual(code, "error:ValueError")
        self.mock_output.error.assert_called_once_with(msg)

    def test_handle_file_operation(self):
        path = Path("/test/cases.json")

        msg, code = self.error_handler.handle_file_operation(
            path, FileNotFoundError("No such file")
        )
        self.assertEqual(msg, "Failed to read cases.json: File not found.")
        self.assertEqual(code, "file:not_found")

        msg, code = self.error_handler.handle_file_operation(
            path, PermissionError("Permission denied")
        )
        self.assertIn("permission", msg.lower())
        self.assertEqual(code, "file:permission_denied")

        _, code = self.error_handler.handle_file_operation(
            path, IsADirectoryError("dir")
        )
        self.assertEqual(code, "file:is_directory")

        _, code = self.error_handler.handle_file_operation(path, IOError("IO Error"))
        self.assertEqual(code, "file:OSError")

    def test_handle_validation_error_lists_every_violation(self):
        error = CaseBaseValidationError(
            ["case c1: premise side mismatch", "duplicate id: c1"]
        )
        msg, code = self.error_handler.handle_validation_error("cases.json", error)
        self.assertEqual(msg, "Invalid case base cases.json: 2 violations")
        self.assertEqual(code, "validation:invalid_case_base")
        printed = [c.args[0] for c in self.mock_output.error.call_args_list]
        self.assertEqual(
            printed[1:], ["  case c1: premise side mismatch", "  duplicate id: c1"]
        )

    def test_handle_lookup_error(self):
        _, code = self.error_handler.handle_lookup_error(UnknownFactorError(["yacht"]))
        self.assertEqual(code, "validation:unknown_factor")
        _, code = self.error_handler.handle_lookup_error(UnknownCaseError(["c9"]))
        self.assertEqual(code, "validation:unknown_case")
        msg, code = self.error_handler.handle_lookup_error(UnknownArgumentError("a9"))
        self.assertEqual(code, "validation:unknown_argument")
        self.assertEqual(msg, "argument not in framework: a9")

    def test_handle_cap_error(self):
        msg, code = self.error_handler.handle_cap_error(
            CapExceededError("universe", 16, 18)
        )
        self.assertTrue(msg.startswith("universe cap exceeded: 18 > 16"))
        self.assertIn("--cap", msg)
        self.assertEqual(code, "cap:exceeded")

    def test_handle_config_error(self):
        config_file = Path("/test/config.toml")

        msg, code = self.error_handler.handle_config_error(
            config_file, FileNotFoundError("No such file")
        )
        self.assertEqual(msg, "Configuration file not found: config.toml")
        self.assertEqual(code, "config:not_found")

        _, code = self.error_handler.handle_config_error(
            config_file, PermissionError("Permission denied")
        )
        self.assertEqual(code, "config:permission_denied")

        class TOMLDecodeError(Exception):
            pass

        _, code = self.error_handler.handle_config_error(
            config_file, TOMLDecodeError("Invalid TOML")
        )
        self.assertEqual(code, "config:invalid_toml")

        _, code = self.error_handler.handle_config_error(
            config_file, ValueError("odd")
        )
        self.assertEqual(code, "config:ValueError")

    def test_handle_exception_dispatch(self):
        cases = [
            (CaseBaseValidationError(["x"]), "validation:invalid_case_base"),
            (UnknownFactorError(["yacht"]), "validation:unknown_factor"),
            (CapExceededError("knowledge", 4, 5), "cap:exceeded"),
            (InternalConsistencyError("disagree"), "internal:inconsistency"),
            (FileNotFoundError("gone"), "file:not_found"),
            (RuntimeError("boom"), "internal:RuntimeError"),
        ]
        for exception, expected in cases:
            with self.subTest(exception=type(exception).__name__):
                _, code = self.error_handler.handle_exception("cases.json", exception)
                self.assertEqual(code, expected)


if __name__ == "__main__":
    unittest.main()
