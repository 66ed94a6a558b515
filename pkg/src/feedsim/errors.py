"""Exception hierarchy shared across the package."""


class FeedsimError(Exception):
    """Base class for every error raised by feedsim."""


class RangeError(FeedsimError, ValueError):
    """A value lies outside its declared scale."""

    def __init__(self, field: str, value=None, message: str | None = None):
        self.field = field
        self.value = value
        super().__init__(message or f"{field}: value {value!r} out of range")


class EmptyInterests(FeedsimError, ValueError):
    pass


class FixtureCorrupt(FeedsimError):
    pass


class EmptyPool(FeedsimError):
    pass


class InsufficientCandidates(FeedsimError, ValueError):
    pass


class EmptySelection(FeedsimError, ValueError):
    pass


class EmptyConsumption(FeedsimError, ValueError):
    pass


class ConfigError(FeedsimError, ValueError):
    pass


class UnknownProfile(FeedsimError, KeyError):
    pass


class ParseError(FeedsimError, ValueError):
    def __init__(self, message: str, text: str = ""):
        self.text = text
        super().__init__(f"{message}: {text!r}")


class TransportError(FeedsimError):
    pass


class RateLimited(TransportError):
    def __init__(self, retry_after: float | None = None):
        self.retry_after = retry_after
        super().__init__(f"rate limited (retry after {retry_after}s)")


class CassetteMiss(FeedsimError):
    """Replay mode hit a prompt with no stored completion."""


class TranscriptError(FeedsimError):
    pass
