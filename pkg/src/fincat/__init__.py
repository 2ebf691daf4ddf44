"""Finite-category computation engine.

Builds and validates finite categories, functors and natural
transformations, computes limits, comma categories, right Kan
extensions and codensity monads, constructs categories of functor
algebras and their varieties, and mechanically verifies the structural
equivalences relating all of these on small concrete instances.
"""

from .errors import (
    FincatError,
    FunctorialityViolation,
    LawViolation,
    MissingCommaLimit,
    MissingComposite,
    NaturalitySquareViolation,
    NoKanExtension,
    NotFAlgebraic,
    ParseError,
    PreconditionUnmet,
    SearchSpaceExceeded,
    UnknownReference,
)
from .kernel import (
    FinCategory,
    Functor,
    Morphism,
    NatTrans,
    Verdict,
    build_category,
    build_functor,
    build_nat_trans,
    check_faithful,
    compose_functors,
    functor_power,
    identity_functor,
    identity_nat,
    opposite,
    vertical,
)

__all__ = [
    "FinCategory",
    "Functor",
    "Morphism",
    "NatTrans",
    "Verdict",
    "build_category",
    "build_functor",
    "build_nat_trans",
    "check_faithful",
    "compose_functors",
    "functor_power",
    "identity_functor",
    "identity_nat",
    "opposite",
    "vertical",
    "FincatError",
    "LawViolation",
    "MissingComposite",
    "FunctorialityViolation",
    "NaturalitySquareViolation",
    "MissingCommaLimit",
    "NoKanExtension",
    "NotFAlgebraic",
    "ParseError",
    "PreconditionUnmet",
    "SearchSpaceExceeded",
    "UnknownReference",
]
