"""Exception hierarchy shared by the whole engine.

Every law failure carries a human-readable witness in its message, so a
rejected structure always explains itself.
"""

from __future__ import annotations


class FincatError(Exception):
    """Base class for all engine errors."""


class LawViolation(FincatError):
    """A category/functor/monad law failed; the message names a witness."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class MissingComposite(LawViolation):
    """A composable pair has no declared result and none is forced."""


class FunctorialityViolation(LawViolation):
    """A functor fails to preserve structure; witness is the failing pair."""


class NaturalitySquareViolation(LawViolation):
    """A naturality square fails; witness is the failing morphism."""


class MissingCommaLimit(FincatError):
    """The comma category over a base object has no limit."""

    def __init__(self, base_object: str):
        super().__init__(f"no limit over the comma category at object {base_object!r}")
        self.base_object = base_object


class NoKanExtension(FincatError):
    """No right Kan extension exists in the enumerated space."""


class SearchSpaceExceeded(FincatError):
    """An exhaustive search went past its candidate budget."""

    def __init__(self, budget: int, context: str = ""):
        msg = f"search space exceeds budget of {budget} candidates"
        if context:
            msg += f" ({context})"
        super().__init__(msg)
        self.budget = budget


class NotFAlgebraic(FincatError):
    """A diagram object lacks the functor-algebra construction tag."""


class PreconditionUnmet(FincatError):
    """A verifier's hypothesis does not hold on the given instance."""


class ParseError(FincatError):
    """Source text rejected; carries line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class UnknownReference(ParseError):
    """A name used in a source file is not declared anywhere."""
