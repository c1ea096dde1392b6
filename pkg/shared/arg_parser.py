#!/usr/bin/env python3
"""
Argument parser utilities for PrecedentCLI tools.
Provides consistent argument parsing with common patterns.

Tools with several commands register them through ``add_subcommand``; every
subcommand inherits the common and output options, so flags may follow the
command name (``explain-precedents decide cases.json --facts a,b --verbose``).
"""
import argparse
from typing import Any, Callable, Dict, List, Optional, Sequence, Union


def comma_list(value: str) -> List[str]:
    """Split ``a,b, c`` into ``["a", "b", "c"]``; an empty string is the empty list."""
    return [part.strip() for part in value.split(",") if part.strip()]


def positive_int(value: str) -> int:
    """argparse type for caps and counts that must be at least 1."""
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {number}")
    return number


class UsageError(Exception):
    """Raised instead of exiting when the command line cannot be parsed."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


class ArgumentParser:
    def __init__(
        self,
        tool_name: str,
        description: str,
        epilog: Optional[str] = None,
        version: str = "0.1.0",
    ):
        """
        Initialize argument parser for a tool.

        Args:
            tool_name: Name of the tool
            description: Tool description
            epilog: Optional epilog text
            version: Tool version
        """
        self.tool_name = tool_name
        self.version = version

        # Create parser
        self.parser = _Parser(
            prog=tool_name,
            description=description,
            epilog=epilog,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )

        # Options shared by every subcommand
        self.common = _Parser(add_help=False)
        self._subparsers: Optional[Any] = None
        self.subcommands: Dict[str, argparse.ArgumentParser] = {}

        # Add common arguments
        self.parser.add_argument(
            "--version",
            action="version",
            version=f"{tool_name} {version}",
            help="Show version information and exit",
        )

    def add_common_arguments(self) -> None:
        """Add common arguments used across most tools."""
        self.common.add_argument(
            "--verbose", "-v", action="store_true", help="Enable verbose output"
        )

        self.common.add_argument(
            "--config",
            metavar="PATH",
            help="Path to config file (default: ~/.config/precedentcli/{tool}.toml)",
        )

        self.common.add_argument(
            "--no-color", action="store_true", help="Disable colored output"
        )

    def add_output_arguments(self) -> None:
        """Add output-related arguments."""
        output_group = self.common.add_argument_group("Output Options")
        formats = output_group.add_mutually_exclusive_group()

        formats.add_argument(
            "--dot", action="store_true", help="Emit Graphviz DOT instead of text"
        )

        formats.add_argument(
            "--structured",
            action="store_true",
            help="Emit a JSON document mirroring the text output",
        )

        output_group.add_argument(
            "--annotate",
            action="store_true",
            help="Add notes (decisive factors, rejected trees, new inconsistencies)",
        )

    def add_subcommand(
        self, name: str, help_text: str
    ) -> argparse.ArgumentParser:
        """
        Register a subcommand that inherits the common options.

        Call after add_common_arguments/add_output_arguments.

        Args:
            name: Command name
            help_text: One-line help

        Returns:
            The subcommand's parser, for command-specific arguments
        """
        if self._subparsers is None:
            self._subparsers = self.parser.add_subparsers(
                dest="command", metavar="COMMAND", parser_class=_Parser
            )
            self._subparsers.required = True
        subparser = self._subparsers.add_parser(
            name, help=help_text, description=help_text, parents=[self.common]
        )
        self.subcommands[name] = subparser
        return subparser

    def _target(self, command: Optional[str]) -> argparse.ArgumentParser:
        return self.subcommands[command] if command else self.parser

    def add_positional_argument(
        self,
        name: str,
        help_text: str,
        nargs: Union[int, str, None] = None,
        default: Any = None,
        type: Callable = str,
        command: Optional[str] = None,
    ) -> None:
        """
        Add a positional argument.

        Args:
            name: Argument name
            help_text: Help text
            nargs: Number of arguments (default: None)
            default: Default value (default: None)
            type: Type converter (default: str)
            command: Subcommand to add it to (default: the main parser)
        """
        kwargs: Dict[str, Any] = {"help": help_text, "type": type}
        if nargs is not None:
            kwargs["nargs"] = nargs
        if default is not None:
            kwargs["default"] = default

        self._target(command).add_argument(name, **kwargs)

    def add_flag(
        self,
        name: str,
        help_text: str,
        short_name: Optional[str] = None,
        command: Optional[str] = None,
    ) -> None:
        """
        Add a boolean flag argument.

        Args:
            name: Long name (without --)
            help_text: Help text
            short_name: Optional short name (without -)
            command: Subcommand to add it to (default: the main parser)
        """
        target = self._target(command)
        if short_name:
            target.add_argument(
                f"--{name}", f"-{short_name}", action="store_true", help=help_text
            )
        else:
            target.add_argument(f"--{name}", action="store_true", help=help_text)

    def add_option(
        self,
        name: str,
        help_text: str,
        short_name: Optional[str] = None,
        default: Any = None,
        type: Callable = str,
        choices: Optional[List[Any]] = None,
        command: Optional[str] = None,
        metavar: Optional[str] = None,
    ) -> None:
        """
        Add an option argument.

        Args:
            name: Long name (without --)
            help_text: Help text
            short_name: Optional short name (without -)
            default: Default value
            type: Type converter
            choices: Optional list of valid choices
            command: Subcommand to add it to (default: the main parser)
            metavar: Placeholder shown in help
        """
        kwargs: Dict[str, Any] = {"help": help_text, "type": type}

        if default is not None:
            kwargs["default"] = default

        if choices is not None:
            kwargs["choices"] = choices

        if metavar is not None:
            kwargs["metavar"] = metavar

        target = self._target(command)
        if short_name:
            target.add_argument(f"--{name}", f"-{short_name}", **kwargs)
        else:
            target.add_argument(f"--{name}", **kwargs)

    def parse_args(self, argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
        """
        Parse command line arguments.

        Raises:
            UsageError: if the arguments do not parse
        """
        return self.parser.parse_args(argv)
