"""Exception hierarchy shared by every module."""


class OmlkitError(Exception):
    """Base class; ``witness`` carries the offending elements, if any."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPoset(OmlkitError):
    pass


class NoMeet(OmlkitError):
    pass


class OrthoViolation(OmlkitError):
    pass


class UnknownElement(OmlkitError):
    pass


class UnknownCorpusName(OmlkitError):
    pass


class NotOrthomodular(OmlkitError):
    pass


class NotGalois(OmlkitError):
    pass


class DomainMismatch(OmlkitError):
    pass


class BudgetExceeded(OmlkitError):
    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class NotAssociative(OmlkitError):
    pass


class NoUnit(OmlkitError):
    pass


class InvNotInvolutive(OmlkitError):
    pass


class SaiUnderivable(OmlkitError):
    pass


class HostMismatch(OmlkitError):
    pass


class ParseError(OmlkitError):
    pass
