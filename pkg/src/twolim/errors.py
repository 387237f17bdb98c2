"""Exception hierarchy.

Every validation failure carries a structured witness so that a caller (or a
test) can replay the offending data instead of trusting a message string.
"""


class TwolimError(Exception):
    """Base class for all package errors."""

    def __init__(self, message, **witness):
        super().__init__(message)
        self.witness = witness


# -- category / functor / naturality validation -------------------------------

class DuplicateIdentifier(TwolimError):
    pass


class BadEndpoints(TwolimError):
    pass


class MissingComposite(TwolimError):
    pass


class BadIdentity(TwolimError):
    """A unit law fails, or the identity assignment is not an endomorphism."""


class NonAssociative(TwolimError):
    """Carries the offending composable triple in ``witness``."""


class NotFunctorial(TwolimError):
    pass


class NotNatural(TwolimError):
    pass


class NotIso(TwolimError):
    pass


class UnknownObject(TwolimError):
    pass


# -- set-diagram machinery -----------------------------------------------------

class ShapeMismatch(TwolimError):
    pass


# -- pseudofunctor coherence ---------------------------------------------------

class NotIsoCell(TwolimError):
    pass


class IncoherentUnit(TwolimError):
    pass


class IncoherentAssoc(TwolimError):
    pass


class IncompatibleCells(TwolimError):
    pass


# -- glued categories ----------------------------------------------------------

class NotFiltered(TwolimError):
    pass


class SearchExhausted(TwolimError):
    """A cocone/equalizer search ran out of candidates.

    Impossible over a genuinely filtered finite index; signals invalid input
    or an upstream validator bug.
    """


class BadRepresentative(TwolimError):
    pass


class NotACocone(TwolimError):
    pass


class NotACone(TwolimError):
    pass


class NonWellDefined(TwolimError):
    """Two representatives of the same class produced different results."""


class InternalInvariantError(TwolimError):
    """A property that should hold by construction failed; a bug, not bad input."""


# -- text format ---------------------------------------------------------------

class CatmlSyntaxError(TwolimError):
    def __init__(self, message, line=None, column=None, **witness):
        super().__init__(message, **witness)
        self.line = line
        self.column = column

    def __str__(self):
        base = super().__str__()
        if self.line is not None:
            return f"line {self.line}, column {self.column}: {base}"
        return base


class UnresolvedReference(TwolimError):
    pass


class ElaborationDiverges(TwolimError):
    pass
