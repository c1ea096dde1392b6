"""
PrecedentCLI shared utilities.

Argument parsing, configuration, console output and error handling used by the
tools of the PrecedentCLI suite.
"""

__version__ = "0.1.0"
