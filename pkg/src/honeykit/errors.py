"""Exception hierarchy shared across the toolkit.

Every error carries an ``exit_code`` so the CLI can map failures onto a
stable process exit status: 2 for usage errors (handled by click), 3 for
data errors, 4 for provider errors.
"""


class HoneykitError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 3


class UnknownTokenType(HoneykitError):
    """A token type id outside the built-in A..G set (or loaded spec set)."""


class InvalidTriple(HoneykitError):
    """A block triple referencing ids that do not exist in the block set."""


class InvalidRating(HoneykitError):
    """A qualitative rating with an unknown symbol or inconsistent axes."""


class NotRobotsTxt(HoneykitError):
    """Text that cannot be interpreted as a robots.txt file at all."""


class InsufficientSamples(HoneykitError):
    """Too few feature vectors to compute corpus statistics."""


class ZeroStd(HoneykitError):
    """A feature with zero standard deviation makes the score undefined."""


class OutOfRange(HoneykitError):
    """A score or parameter outside its documented range."""


class MissingComponent(HoneykitError):
    """A composite score requested before all components were recorded."""


class UnknownRun(HoneykitError):
    """A run id that is not present in the run store."""


class MissingColumn(HoneykitError):
    """A leak file header lacking a column named in the schema map."""


class UnreadableFile(HoneykitError):
    """A file that could not be opened or decoded."""


class InsufficientCompleteRecords(HoneykitError):
    """Fewer complete leak records than the requested sample size."""


class TooFewDecoys(HoneykitError):
    """A user with fewer decoy candidates than the sweetword set needs."""


class EmptyTraining(HoneykitError):
    """An attacker model trained on an empty password corpus."""


class NoScoredRuns(HoneykitError):
    """A report requested over runs none of which carry scores."""


class ProviderError(HoneykitError):
    """A failure talking to (or replaying) an LLM provider."""

    exit_code = 4


class FixtureMissing(ProviderError):
    """Strict replay requested but no fixture matches the prompt."""
