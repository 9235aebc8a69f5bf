"""Shared exception types.

Parse failures raise ParseError rather than shadowing the builtin
SyntaxError; everything else is named for the condition it reports.
"""


class TclabError(Exception):
    """Base class for all package-specific errors."""


class ParseError(TclabError, ValueError):
    """Malformed element, field-spec, or polynomial text."""


class ReducibleModulus(TclabError, ValueError):
    """A field modulus that is not irreducible over GF(2)."""


class DegreeMismatch(TclabError, ValueError):
    """Degree of a supplied object disagrees with the declared one."""


class DimensionMismatch(TclabError, ValueError):
    """Matrix or vector dimensions do not line up."""


class CtxMismatch(TclabError, ValueError):
    """Operands living in different field presentations."""


class BadQ(TclabError, ValueError):
    """A dyadic parameter that is not a power of two, or out of range."""


class BadIndex(TclabError, ValueError):
    """A generator or basis index outside its admissible set."""


class BadPoint(TclabError, ValueError):
    """An evaluation point that fails a required side condition."""


class TooLarge(TclabError, ValueError):
    """A size guard tripped; pass force=True where supported."""


class TraceSplitFailed(TclabError, RuntimeError):
    """Equal-degree splitting exhausted its retry budget."""


class CrossCheckFailed(TclabError, RuntimeError):
    """Two independent computation routes disagreed."""


CrossCheckMismatch = CrossCheckFailed


class NotCertified(TclabError, RuntimeError):
    """A rank certificate was requested strictly but not achieved."""
