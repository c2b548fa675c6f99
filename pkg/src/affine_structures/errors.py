class AffineError(Exception):
    """Base class for every error raised by this package."""


# ring-core
class MalformedPresentation(AffineError):
    pass


class SizeLimitExceeded(AffineError):
    pass


class ReducibleModulus(AffineError):
    pass


class ZeroElement(AffineError):
    pass


class TooLarge(AffineError):
    pass


class SizeMismatch(AffineError):
    pass


class HomError(AffineError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAdditive(HomError):
    pass


class NotMultiplicative(HomError):
    pass


class UnitNotPreserved(HomError):
    pass


# pseudogroup / atlas
class UniverseEscape(AffineError):
    pass


class SpaceMismatch(AffineError):
    pass


class GammaMismatch(AffineError):
    pass


# sheaf-scheme
class NotAdmissible(AffineError):
    def __init__(self, message, conflict=None):
        super().__init__(message)
        self.conflict = conflict or {}


class NotExtensionsOfSameStructure(AffineError):
    pass


# gluing-relations
class GlueError(AffineError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSurjective(GlueError):
    pass


class NotInjective(GlueError):
    pass


class NotOpen(GlueError):
    pass


class NotWellDefined(GlueError):
    pass


class NotHomeomorphism(GlueError):
    pass


class RelationMismatch(GlueError):
    pass


class PreconditionFailed(GlueError):
    pass


class MissingDeckWitness(AffineError):
    pass


class UniverseMismatch(AffineError):
    pass


# cli-io
class ParseError(AffineError):
    pass


class DanglingReference(ParseError):
    pass


class DuplicateId(ParseError):
    pass
