"""Relativistic Doppler and velocity-composition laws.

Closed-form kinematics, grid-based checks of the cascade and
order-invariance axioms, and numerical recovery of the representation
pair (u, xi) from black-box laws.
"""

from relkin._core import (  # noqa: F401
    AdditiveRep,
    BisectionError,
    CompositionLaw,
    ConsistencyError,
    DopplerLaw,
    FactorSamples,
    FitError,
    FitReport,
    GridSpec,
    HomogeneityError,
    MonotoneMap,
    MonotonicityError,
    build_additive_rep,
    check_DC,
    check_LOI,
    check_M,
    check_R,
    check_group_structure,
    doppler_de,
    doppler_de_law,
    doppler_general,
    doppler_general_law,
    doppler_star,
    doppler_star_law,
    extract_f,
    fit_power_exponent,
    fix_gauge,
    grid_spec,
    lorentz_fitzgerald,
    lorentz_fitzgerald_law,
    recover_representation,
    recover_u,
    u_lf,
    u_lf_inverse,
    velocity_add_av,
    velocity_add_av_law,
    velocity_add_general,
    velocity_add_general_law,
    velocity_add_perp,
    velocity_add_perp_law,
    witness_lf_vs_dstar,
)

__version__ = "0.1.0"
