"""Exception hierarchy.

Every error raised on bad *data* (as opposed to programming mistakes)
derives from :class:`DataError`, which the command line maps to exit
status 2.
"""


class DataError(ValueError):
    """Base class for errors caused by the input data."""


class NonInvertibleScript(DataError):
    pass


class NoIndicContent(DataError):
    pass


class EmptyCorpus(DataError):
    pass


class InvalidOrder(DataError):
    pass


class FormatError(DataError):
    """A model or table file could not be parsed."""


class AlignmentMismatch(DataError):
    pass


class EmptyReference(DataError):
    pass


class DegenerateAlphabet(DataError):
    pass


class ManifestError(DataError):
    pass
