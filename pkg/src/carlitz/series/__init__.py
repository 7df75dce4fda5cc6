from .multi import (VARIABLES, WEIGHTS, MultiSeries, PrecisionError, SeriesRing,
                    TruncationError, dual_derivative_at_one)
from .rational import Rational, as_rational

__all__ = [
    "VARIABLES", "WEIGHTS", "MultiSeries", "PrecisionError", "SeriesRing",
    "TruncationError", "dual_derivative_at_one", "Rational", "as_rational",
]
