"""Numerical engine for complete bounded minimal annuli.

Builds conformal minimal immersions of planar annuli whose intrinsic
boundary distance is driven up by nonvanishing holomorphic multipliers
amplified on a labyrinth of nested polygon offsets, while the image in
3-space stays inside a controlled ball.  Every stage reports measured
constants and margins for its certified inequalities.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AdvanceFailureError, ApproximationError, ConfigError, DisconnectedError,
    DomainError, EngineError, GeometryError, IllConditionedFitError,
    LemmaFailureError, OffsetError, PathRoutingError, QuadratureError,
    ResolutionError, SeedConfigError, StepFailureError,
)
from .laurent import LaurentPolynomial, laurent_fit  # noqa: F401
from .quadrature import PolylinePath, path_integral  # noqa: F401
from .weierstrass import (  # noqa: F401
    PhiTriple, WeierstrassData, conformal_factor, fg_from_phi, gauss_map,
    immerse, is_z2_type, period_defect, phi_from_fg, symmetry_defect,
)
