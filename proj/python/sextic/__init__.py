"""High-precision orthogonal polynomials for the weight exp(-x^6 - t2 x^4 - t1 x^2).

Numbers cross the boundary as decimal strings so no precision is lost;
``to_mpf`` converts them when mpmath is available.
"""

from ._core import (
    PrecisionExhausted,
    QuadratureFailure,
    __version__,
    asympt,
    moments,
    recurrence,
    run_cli,
    verify,
    zeta_prime_neg1,
)

__all__ = [
    "PrecisionExhausted",
    "QuadratureFailure",
    "__version__",
    "asympt",
    "column",
    "moments",
    "recurrence",
    "run_cli",
    "to_mpf",
    "verify",
    "zeta_prime_neg1",
]


def column(table, name):
    """One column of a result table, as strings."""
    idx = table["columns"].index(name)
    return [row[idx] for row in table["rows"]]


def to_mpf(text, dps=None):
    import mpmath

    if dps is None:
        return mpmath.mpf(text)
    with mpmath.workdps(dps):
        return mpmath.mpf(text)
