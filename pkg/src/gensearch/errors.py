"""Exception types shared across the service modules."""


class GensearchError(Exception):
    """Base class for all service errors."""


# --- corpus ---

class UnreadableManifest(GensearchError):
    pass


class DuplicateId(GensearchError):
    pass


class NotFound(GensearchError):
    pass


class UnknownParent(GensearchError):
    pass


class DimensionMismatch(GensearchError):
    pass


class UnreadablePixels(GensearchError):
    pass


# --- retrieval ---

class EmptyIndex(GensearchError):
    pass


class UnknownImage(GensearchError):
    pass


class ProviderUnavailable(GensearchError):
    pass


# --- llm gateway ---

class MissingBinding(GensearchError):
    pass


class DeadlineExceeded(GensearchError):
    pass


class NoJsonFound(GensearchError):
    pass


class SchemaViolation(GensearchError):
    pass


class EmptyQuery(GensearchError):
    pass


# --- sessions ---

class UnknownSession(GensearchError):
    pass


class StorageFailure(GensearchError):
    pass


class MalformedLog(GensearchError):
    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


# --- modification ---

class EmptySelection(GensearchError):
    pass


class UnknownSegment(GensearchError):
    pass


class MaskMismatch(GensearchError):
    pass


class BackendUnavailable(GensearchError):
    pass


class EmptyKeywords(GensearchError):
    pass


# --- service ---

class CorpusMissing(GensearchError):
    pass


class PortInUse(GensearchError):
    pass
