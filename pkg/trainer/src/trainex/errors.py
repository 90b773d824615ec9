"""Error taxonomy for the training/export harness."""


class TrainerError(Exception):
    """Base class for all harness failures."""


class BadConfig(TrainerError):
    """A config field or config file violates its contract."""


class MissingClassDirectory(TrainerError):
    """The dataset root lacks a required class directory (or it is empty)."""


class UnknownBackbone(TrainerError):
    """Requested backbone is not in the supported set."""


class IOFailure(TrainerError):
    """An export could not be written."""
