"""Exception types raised by socialvote."""


class SocialVoteError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SocialVoteError, ValueError):
    """An argument lies outside the domain of a model function."""


class StepSizeError(SocialVoteError, ValueError):
    """Integrator step is too coarse for the accuracy contract."""


class DegenerateInputError(SocialVoteError, ValueError):
    """Input carries no information for the requested computation."""


class NotFittedError(SocialVoteError, AttributeError):
    """Estimator used before ``fit``."""
