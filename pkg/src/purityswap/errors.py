"""Package-wide exception types."""


class ConsistencyViolation(Exception):
    """A computed quantity failed a physics self-check.

    Raised when a value that is bounded by construction (a probability sum,
    a contrast modulus, a Bloch-vector length) leaves its allowed range by
    more than roundoff. This signals a convention or normalization bug, not
    bad user input. The command-line driver maps it to exit code 2.
    """


class TruncationTooSmall(ValueError):
    """The Fock-space cutoff cannot hold the requested state.

    Raised when the probability weight lost by truncating a coherent state
    exceeds 1e-12 before renormalization.
    """
