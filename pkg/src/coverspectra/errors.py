"""Exception types shared across the package.

Input/parse problems raise ParseError (CLI exit code 2); the remaining types
signal that a mathematically required precondition failed.
"""
from __future__ import annotations


class CoverSpectraError(Exception):
    """Base class for every error the package raises deliberately."""


class ParseError(CoverSpectraError, ValueError):
    """Malformed input file or argument."""


class CapExceeded(CoverSpectraError, RuntimeError):
    """Group enumeration grew past the hard element cap."""


class DegreeMismatch(CoverSpectraError, ValueError):
    """Permutations of different degrees were combined."""


class NotSubgroup(CoverSpectraError, ValueError):
    """A set of elements expected to form a subgroup does not."""


class GroupMismatch(CoverSpectraError, ValueError):
    """Objects attached to different groups were combined."""


class ConductorCapExceeded(CoverSpectraError, RuntimeError):
    """A cyclotomic operation needed a conductor above the hard cap."""


class MalformedCharacter(CoverSpectraError, ValueError):
    """Class-function data inconsistent with its group."""


class EllTooSmall(CoverSpectraError, ValueError):
    """The chosen root-of-unity order does not support the requested test."""


class TooLarge(CoverSpectraError, RuntimeError):
    """A brute-force enumeration would exceed its size bound."""


class EllDividesOrder(CoverSpectraError, ValueError):
    """A modulus required to be coprime to the group order is not."""


class FieldMismatch(CoverSpectraError, ValueError):
    """Modules or vectors over different coefficient fields were combined."""


class NotCyclic(CoverSpectraError, ValueError):
    """A subgroup required to be cyclic is not."""


class NotDivisible(CoverSpectraError, ValueError):
    """An Euler characteristic not divisible by the group order."""


class DimensionOverflow(CoverSpectraError, RuntimeError):
    """A dense operator would exceed the configured size cap."""


class DisconnectedCover(CoverSpectraError, ValueError):
    """A construction requiring a connected cover received a disconnected one."""


class NotAWitness(CoverSpectraError, ValueError):
    """A claimed homological witness fails its defining property."""


class ConvergenceFailure(CoverSpectraError, RuntimeError):
    """The numerical eigensolver failed to converge."""
