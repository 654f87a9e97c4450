"""Exact arithmetic for level-one quasimodular forms.

Z-bases of quasimodular spaces by prime saturation, multi-modular rank
certificates, analytic coefficient bounds with the resulting Sturm-bound
descent, and empirical determination checks.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceeded,
    DomainError,
    EntryBoundViolated,
    NoProgress,
    NonIntegralCoefficient,
    NotFoundWithinBudget,
    NotInSpace,
    PrecisionExhausted,
    QMFError,
    RankDeficient,
    UnderDetermined,
)
from .series import QSeries, QSeriesModM  # noqa: E402
from .eisenstein import Monomial, delta, eisenstein, monomial_series, monomials, space  # noqa: E402

__all__ = [
    "__version__",
    "QSeries", "QSeriesModM", "Monomial",
    "delta", "eisenstein", "monomial_series", "monomials", "space",
    "QMFError", "DomainError", "NonIntegralCoefficient", "RankDeficient",
    "PrecisionExhausted", "EntryBoundViolated", "BudgetExceeded",
    "NotFoundWithinBudget", "NotInSpace", "UnderDetermined", "NoProgress",
]
