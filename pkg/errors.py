#!/usr/bin/env python3
"""
Named errors raised by betadim
"""


class BetaDimError(Exception):
    """Base class for every domain error; the CLI maps these to exit status 1"""

    @property
    def name(self) -> str:
        return type(self).__name__


class PrecisionExhausted(BetaDimError):
    """A decision could not be certified within the refinement budget"""


class DomainError(BetaDimError):
    """An input lies outside the range an operation accepts"""


class NumberFormatError(DomainError):
    """A number literal does not parse under the literal grammar"""


class InvalidPrefix(BetaDimError):
    """A digit prefix cannot define β_N (zero last digit or not self-admissible)"""


class NotAdmissible(BetaDimError):
    """A word is not β-admissible"""


class NotSelfAdmissible(BetaDimError):
    """A word has a shift that exceeds it lexicographically"""


class CapExceeded(BetaDimError):
    """A configured enumeration or counting cap was hit"""


class AutomatonDepthExceeded(CapExceeded):
    """A query reached past the truncation depth of the follower automaton"""


class EmptyRegime(BetaDimError):
    """The exponent pair (v, v̂) admits no points"""


class DepthTooSmall(BetaDimError):
    """A construction depth does not reach the second marker block"""


class InconsistentPrefix(BetaDimError):
    """A word deviates from the construction at a determined position"""


class VerificationFailed(BetaDimError):
    """A post-condition check on a computed result failed"""


class UsageError(BetaDimError):
    """A command line could not be turned into a valid run configuration"""
