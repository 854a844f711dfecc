"""Exception types raised across the pipeline."""


class RepetextError(Exception):
    """Base class for all library errors."""


class InputError(RepetextError):
    """Bad input data (encoding, empty text, malformed files)."""


class CorpusEncodingError(InputError):
    def __init__(self, offset: int, reason: str = "invalid UTF-8"):
        self.offset = offset
        super().__init__(f"{reason} at byte offset {offset}")


class EmptyCorpusError(InputError):
    pass


class GazetteerError(InputError):
    pass


class AliasCollisionError(GazetteerError):
    def __init__(self, alias: str, first: str, second: str):
        self.alias = alias
        self.entities = (first, second)
        super().__init__(f"alias {alias!r} claimed by both {first!r} and {second!r}")


class ParameterError(RepetextError, ValueError):
    """An argument is outside its documented domain."""


class OracleGuardError(ParameterError):
    pass


class OutputError(RepetextError, OSError):
    """An output file could not be written."""
