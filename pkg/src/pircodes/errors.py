"""Package-wide exception types."""


class UsageError(ValueError):
    """An argument violates an operation's contract."""


class FileFormatError(ValueError):
    """An input file does not match its documented format."""


class CheckpointError(ValueError):
    """A checkpoint file is missing, corrupt, or belongs to a different run."""
