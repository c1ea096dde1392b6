"""
PrecedentCLI reasoning library.

Precedential constraint over (possibly inconsistent) case bases, the derivation
state argumentation framework built on top of it, and dispute-tree explanations.
"""

__version__ = "0.1.0"
