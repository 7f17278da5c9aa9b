"""Exception types shared across the pipeline."""


class SurveyInsightsError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(SurveyInsightsError):
    """Vectors (or a provider response) do not agree on dimension."""


class ZeroVector(SurveyInsightsError):
    """A zero-norm vector reached an operation that needs a direction."""


class EmptyInput(SurveyInsightsError):
    """An operation that requires at least one element got none."""


class CacheMiss(SurveyInsightsError):
    """A text was requested that the embedding cache does not contain."""

    def __init__(self, text: str):
        super().__init__(f"no cached embedding for text: {text!r}")
        self.text = text


class ServiceUnavailable(SurveyInsightsError):
    """The embedding service could not be reached or answered non-200."""


class MalformedCacheFile(SurveyInsightsError):
    """An embedding cache file violates the documented JSONL format."""


class KTooLarge(SurveyInsightsError):
    """Requested more clusters than the data can support."""


class SingleCluster(SurveyInsightsError):
    """Silhouette scoring needs at least two distinct cluster labels."""


class LengthMismatch(SurveyInsightsError):
    """Two parallel sequences differ in length."""


class TooFewSamples(SurveyInsightsError):
    """Clustering mode needs at least three responses."""


class SizeSumMismatch(SurveyInsightsError):
    """Cluster sizes do not add up to the stated total."""


class EmptyCluster(SurveyInsightsError):
    """A cluster with no member responses reached a statistics operation."""


class MismatchedInputs(SurveyInsightsError):
    """A derived result was paired with data it was not computed from."""


class MalformedInput(SurveyInsightsError):
    """A survey input file could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class EmptyWordcloud(SurveyInsightsError):
    """Wordcloud rendering got an empty entry list."""
