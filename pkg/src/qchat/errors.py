"""Typed errors raised across the engine, kept in one place so the service
layer can map them onto HTTP status codes."""


class QChatError(Exception):
    """Base class for all engine errors."""


# -- state and matrix mechanics ---

class EmptyInputError(QChatError):
    pass


class DimensionMismatchError(QChatError):
    pass


class IndexOutOfRangeError(QChatError):
    pass


class NonUnitaryInputError(QChatError):
    pass


# -- gate catalog ---

class UnknownGateError(QChatError):
    """Carries the unresolved name so the service can ask for clarification."""

    def __init__(self, name: str):
        super().__init__(f"unknown gate: {name!r}")
        self.name = name


class MissingParameterError(QChatError):
    pass


class UnexpectedParameterError(QChatError):
    pass


class ArityMismatchError(QChatError):
    pass


# -- extraction ---

class NotFoundError(QChatError):
    """Requested parameter is absent from the context."""


class AmbiguousError(QChatError):
    """Several candidate values match; the user has to choose."""

    def __init__(self, message: str, candidates: list[str]):
        super().__init__(message)
        self.candidates = candidates


class KetParseError(QChatError):
    pass


class MixedArityError(QChatError):
    pass


class EmptyCorpusError(QChatError):
    pass


# -- optimization ---

class InvalidInstanceError(QChatError):
    pass


class TooLargeError(QChatError):
    pass


class InstanceTooLargeError(QChatError):
    pass


class NoFeasibleSolutionError(QChatError):
    """No sampled candidate decoded to a feasible solution; retrying with a
    different seed or a larger penalty usually fixes this."""


class BudgetZeroError(QChatError):
    pass


# -- code generation ---

class CodegenError(QChatError):
    pass


class UnknownTemplateError(CodegenError):
    pass


class MissingBindingError(CodegenError):
    def __init__(self, template_id: str, names: list[str]):
        super().__init__(f"template {template_id!r} missing bindings: {sorted(names)}")
        self.names = sorted(names)


class UnexpectedBindingError(CodegenError):
    pass


class UnboundPlaceholderError(CodegenError):
    """Internal consistency failure: rendered output still contains '{{'."""


class NonFiniteError(QChatError):
    pass
