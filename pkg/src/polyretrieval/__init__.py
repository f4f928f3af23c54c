"""Phase retrieval of complex polynomials from low-redundancy magnitude data."""

from .measurements import (
    InjectivityDesign,
    MeasurementSet,
    NoiseDistribution,
    NoiseSpec,
    cayley_transform,
    design_4d4,
    measure,
    measure_4d4,
    polarize,
)
from .polynomial import (
    Poly,
    RootSet,
    circle_extrema,
    derivative,
    error_up_to_phase,
    evaluate,
    from_roots,
    multiply,
    reverse,
)
from .recovery import (
    AmbiguousRootCountError,
    DegenerateNormError,
    MomentEstimate,
    RecoveredSignal,
    RecoveryConfig,
    RecoveryError,
    SignalTooSmallError,
    StabilityBounds,
    moments_from_ratio,
    newton_coeffs,
    newton_error_constants,
    recover,
    recover_inner,
    recover_outer,
    stability_bounds,
)
from .trig_interp import TrigPoly, dirichlet_kernel, eval_trig, interpolate, parseval_norm

__version__ = "0.1.0"
