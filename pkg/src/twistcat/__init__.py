"""Finite, checkable models of categorical groups, twisted actions and their representations.

Every construction comes with law checks that either scan a finite tuple space
exhaustively or draw a seeded sample, and report the least counterexample.
"""
from .errors import InputError, LawViolation, PreconditionError, RefusalError
from .verify import CheckReport, Law, VerificationPolicy, run_laws

__version__ = "0.1.0"

__all__ = ["CheckReport", "InputError", "Law", "LawViolation", "PreconditionError",
           "RefusalError", "VerificationPolicy", "run_laws"]
