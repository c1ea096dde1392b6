#!/usr/bin/env python3
"""
PrecedentCLI path utilities.
Ensures the shared modules and the precedent library can be imported by tools.
"""

import importlib.util
import sys
from pathlib import Path

REQUIRED_PACKAGES = ("shared", "precedent")


def add_shared_path() -> None:
    """
    Add the repository root to the Python path.
    This allows tools to import shared modules regardless of how they're invoked.
    """
    root_dir = Path(__file__).resolve().parents[1]
    sys.path.insert(0, str(root_dir))


def _importable() -> bool:
    try:
        return all(importlib.util.find_spec(name) is not None for name in REQUIRED_PACKAGES)
    except ImportError:
        return False


def ensure_shared_imports() -> bool:
    """
    Ensure shared modules and the precedent library can be imported, adding the
    path if necessary.

    Returns:
        bool: True if imports are available, False otherwise
    """
    if _importable():
        return True

    # If import fails, add path and try again
    add_shared_path()
    return _importable()


def require_shared_utilities() -> None:
    """
    Ensure shared utilities are available or exit with a helpful message.
    """
    if not ensure_shared_imports():
        print("Error: This tool requires the PrecedentCLI shared utilities.", file=sys.stderr)
        print(
            "Run it from a PrecedentCLI checkout (shared/ and precedent/ next to tools/).",
            file=sys.stderr,
        )
        sys.exit(3)
