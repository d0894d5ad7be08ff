"""Gaussian simulation of photon-photon interactions mediated by a
largely detuned mechanical mode.

Conventions: rates in units of a reference coupling G, time in units of 1/G,
vacuum covariance ½·Identity, logarithmic negativity in natural log.
"""

__version__ = "0.1.0"

CONVENTIONS = "vacuum=1/2, EN=natural-log, units=G"

from .analysis import (
    EigenmodeSet,
    FidelityBreakdown,
    StabilityReport,
    eigenmodes_analytic,
    eigenmodes_numeric,
    logarithmic_negativity,
    stability,
    transfer_fidelity_closed_form,
    transfer_fidelity_exact,
)
from .dynamics import (
    AnalyticPropagatorA,
    Segment,
    analytic_propagator_a,
    propagate,
    propagate_piecewise,
    steady_state,
)
from .gaussian import (
    GaussianState,
    coherent_state,
    is_physical,
    occupation,
    reduce,
    symplectic_eigenvalues,
    tensor,
    thermal_state,
    vacuum,
)
from .model import (
    DriveCase,
    EffectiveParams,
    ModeDynamics,
    QuadratureDynamics,
    SystemSpec,
    build_mode_dynamics,
    build_quadrature_dynamics,
    effective_params,
)
