"""Exception types raised across the package."""


class ChateletError(Exception):
    pass


class GcdError(ChateletError, ValueError):
    pass


class DegenerateError(ChateletError, ValueError):
    pass


class NotSplitError(ChateletError, ValueError):
    pass


class InvalidPoint(ChateletError, ValueError):
    pass


class DegeneratePoint(ChateletError, ValueError):
    pass


class ClassNotInSigma(ChateletError, RuntimeError):
    pass


class LiftFailure(ChateletError, RuntimeError):
    pass


class MismatchError(ChateletError, RuntimeError):
    pass


class DivisibilityError(ChateletError, RuntimeError):
    pass


class ParityError(ChateletError, ValueError):
    pass


class DomainError(ChateletError, ValueError):
    pass


class NoStabilization(ChateletError, RuntimeError):
    def __init__(self, msg, values=None):
        super().__init__(msg)
        self.values = values


class ResourceError(ChateletError, RuntimeError):
    pass
