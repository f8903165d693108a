"""Exception hierarchy.  Every error raised on purpose derives from PlmanError."""


class PlmanError(Exception):
    pass


class MalformedFacetError(PlmanError, ValueError):
    pass


class EmptyComplexError(PlmanError, ValueError):
    pass


class MissingSimplexError(PlmanError, KeyError):
    pass


class TokenCollisionError(PlmanError, ValueError):
    pass


class NotAPseudomanifoldError(PlmanError, ValueError):
    pass


class NonPureComplexError(PlmanError, ValueError):
    pass


class DisconnectedComplexError(PlmanError, ValueError):
    pass


class NotACocycleError(PlmanError, ValueError):
    pass


class PreconditionError(PlmanError, ValueError):
    pass


class MissingRokError(PlmanError, ValueError):
    pass


class ModelLacksClassError(PlmanError, KeyError):
    pass


class NoLiftPossibleError(PlmanError, ValueError):
    pass


class FacetFileError(PlmanError, ValueError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
