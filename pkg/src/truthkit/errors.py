class TruthkitError(Exception):
    """Base class for every error raised by truthkit."""


class ValidationError(TruthkitError):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class ParseError(TruthkitError):
    pass


class DanglingReference(ValidationError):
    pass


class DuplicateId(ValidationError):
    pass


class UnknownInstance(TruthkitError):
    pass


class UnknownId(TruthkitError):
    pass


class SizeCapExceeded(TruthkitError):
    pass


class TypeSetMismatch(ValidationError):
    pass


class InvalidMorphism(ValidationError):
    pass


class NotAModel(TruthkitError):
    pass


class NotSound(ValidationError):
    pass


class TagMismatch(TruthkitError):
    pass


class NonComposable(TruthkitError):
    pass


class UnknownLaw(TruthkitError):
    pass


class UnknownAdjunction(UnknownLaw):
    pass


class PathSpaceInfinite(TruthkitError):
    pass


class IllFormedPath(ValidationError):
    pass


class IllFormedMorphism(ValidationError):
    pass


class DoesNotSatisfy(TruthkitError):
    pass


class DuplicateFrameId(ValidationError):
    pass


class NotUnified(ValidationError):
    pass


class NotTrim(ValidationError):
    pass


class AmbiguousRowType(ValidationError):
    pass


class AmbiguousColumn(ValidationError):
    pass


class NonFunctorial(ValidationError):
    pass


class IllFormedFunctor(ValidationError):
    pass
