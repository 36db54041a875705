"""lforge: exact unramified Euler-factor identities and Mellin-Barnes quadrature.

Submodules:

* :mod:`lforge.algebra` -- rationals, Laurent polynomials, truncated series
* :mod:`lforge.reptheory` -- Weyl characters, Freudenthal oracle, Satake maps
* :mod:`lforge.lfactors` -- Euler factors, zeta series and exact verifiers
* :mod:`lforge.archimedean` -- gamma factors and contour quadrature
* :mod:`lforge.cli` -- the ``lforge`` command
"""
from . import algebra, lfactors, reptheory
from .algebra import LaurentPoly, TruncatedSeries
from .errors import (
    BalanceViolation,
    BoundExceeded,
    CentralCharacterViolation,
    ContourViolation,
    LforgeError,
    NonConvergence,
    NonExactDivision,
    PoleAtNonPositiveInteger,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "algebra",
    "reptheory",
    "lfactors",
    "LaurentPoly",
    "TruncatedSeries",
    "BACKEND",
    "LforgeError",
    "NonExactDivision",
    "BoundExceeded",
    "PoleAtNonPositiveInteger",
    "ContourViolation",
    "NonConvergence",
    "BalanceViolation",
    "CentralCharacterViolation",
    "__version__",
]
