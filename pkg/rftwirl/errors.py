class RftwirlError(ValueError):
    """Base class for every error raised by the library."""


class DimensionMismatchError(RftwirlError):
    pass


class InvalidStateError(RftwirlError):
    pass


class ResourceLimitError(RftwirlError):
    pass


class ConstructionError(RftwirlError):
    pass


class DecodeError(RftwirlError):
    pass


class CodecError(RftwirlError):
    pass


class UncertifiedSchemeError(RftwirlError):
    pass


class UsageError(RftwirlError):
    pass
