"""Signal propagation in discrete enzymatic cascades.

Thin Python layer over the C++ core: cascade ODE integration, stationary
profiles, wave-velocity metrics and reciprocal-velocity rescaling.
"""

from ._core import (  # noqa: F401
    CascadeState,
    ComparisonResult,
    ConfigError,
    DomainError,
    EdgeParams,
    EquilibriumSet,
    Frame,
    FrameMetrics,
    GradientSpec,
    IntegrationError,
    IntegratorConfig,
    PathwaySpec,
    PropagationError,
    Region,
    RescaledCoordinates,
    ShapeResidualSeries,
    SpeedOracle,
    StationaryProfile,
    StochasticEnsembleSpec,
    Trajectory,
    VelocityEstimate,
    VelocitySeries,
    asymptotic_speed,
    build_gradient,
    classify,
    decay_rate,
    edge_rhs,
    edge_speed,
    instantaneous_velocity,
    integrate,
    interp_profile,
    order_check,
    original_positions,
    pathway_rhs,
    penetration_depth_approx,
    penetration_depth_fit,
    reference_time,
    rescale,
    rescale_from_speeds,
    rise,
    run_comparison,
    sample_realization,
    stationary_map,
    stationary_profile,
    uniform_rhs,
    vise,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
