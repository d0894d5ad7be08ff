"""Exact Gaussian evolution under time-independent quadratic dynamics.

First and second moments obey dμ/dt = Aμ and dσ/dt = Aσ + σAᵀ + D; both are
solved in closed form with matrix exponentials, so there is no time-stepping
error.  The noise integral uses the block-exponential identity

    exp([[A, D], [0, −Aᵀ]] t) = [[e^{At}, e^{At} W(t)], [0, e^{−Aᵀt}]]

from which Q(t) = ∫₀ᵗ e^{As} D e^{Aᵀs} ds = F12 · F11ᵀ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, solve_continuous_lyapunov

from .errors import NonFiniteResultError, UnstableError, UnsupportedCaseError
from .gaussian import GaussianState
from .model import DriveCase, QuadratureDynamics, SystemSpec, effective_params


@dataclass(frozen=True)
class Segment:
    """One leg of a piecewise-constant drive schedule."""

    dynamics: QuadratureDynamics
    duration: float

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError("segment duration must be nonnegative")


@dataclass(frozen=True)
class AnalyticPropagatorA:
    """Closed-form approximate propagator for the symmetric beam-splitter case."""

    u: np.ndarray
    s_value: complex
    l_mean: complex


def transition_kernel(dyn: QuadratureDynamics, t: float):
    """Return (e^{At}, Q(t)) for one time step; reusable across states.

    The block exponential is evaluated at a time short enough that the
    anti-stable −Aᵀ corner cannot overflow, then composed up to ``t`` by
    doubling: F ← F·F, Q ← F Q Fᵀ + Q.
    """
    n = dyn.a.shape[0]
    blk = np.zeros((2 * n, 2 * n))
    blk[:n, :n] = dyn.a
    blk[:n, n:] = dyn.d
    blk[n:, n:] = -dyn.a.T
    growth = np.max(np.abs(np.linalg.eigvals(dyn.a).real)) * t
    n_double = max(0, int(np.ceil(np.log2(max(growth, 1.0) / 20.0))))
    f = expm(blk * (t / 2**n_double))
    f11 = f[:n, :n]
    q = f[:n, n:] @ f11.T
    q = 0.5 * (q + q.T)
    for _ in range(n_double):
        q = f11 @ q @ f11.T + q
        f11 = f11 @ f11
    return f11, 0.5 * (q + q.T)


def propagate(dyn: QuadratureDynamics, state: GaussianState, t: float) -> GaussianState:
    """Evolve a Gaussian state for time ``t`` (exact, no discretization)."""
    if t < 0:
        raise ValueError("propagation time must be nonnegative")
    if t == 0:
        return state
    f11, q = transition_kernel(dyn, t)
    mean = f11 @ state.mean
    cov = f11 @ state.cov @ f11.T + q
    if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
        raise NonFiniteResultError("propagation overflowed; dynamics unstable at this time")
    return GaussianState(mean=mean, cov=cov, mode_labels=state.mode_labels)


def propagate_piecewise(segments, state: GaussianState) -> GaussianState:
    """Apply a sequence of constant-dynamics segments in order."""
    segments = list(segments)
    if not segments:
        raise ValueError("need at least one segment")
    for seg in segments:
        state = propagate(seg.dynamics, state, seg.duration)
    return state


def steady_state(dyn: QuadratureDynamics, labels: tuple = ()) -> GaussianState:
    """Stationary Gaussian state of a stable diffusion (Lyapunov solution)."""
    eigs = np.linalg.eigvals(dyn.a)
    max_re = float(np.max(eigs.real))
    if max_re >= -1e-12:
        raise UnstableError(f"drift eigenvalue with Re = {max_re:.3e} >= 0")
    cov = solve_continuous_lyapunov(dyn.a, -dyn.d)
    return GaussianState(
        mean=np.zeros(dyn.a.shape[0]), cov=cov, mode_labels=labels
    )


def analytic_propagator_a(spec: SystemSpec, t: float) -> AnalyticPropagatorA:
    """Approximate mode-basis propagator for the symmetric red-red case.

    Valid for δ1 = δ2 = δ ≠ 0 and G1 = G2; accurate to O((G/δ)²) against the
    exact exponential of the Langevin matrix, which remains the authority.
    """
    if spec.drive_case is not DriveCase.RED_RED:
        raise UnsupportedCaseError("analytic propagator defined for the red-red case")
    if not spec.symmetric:
        raise UnsupportedCaseError("requires g1 == g2 and delta1 == delta2")
    if spec.delta1 == 0.0:
        raise UnsupportedCaseError("requires nonzero detuning")
    g, delta = spec.g1, spec.delta1
    kappa = 0.5 * (spec.kappa1 + spec.kappa2)
    lam = effective_params(spec).lam
    l1 = delta - 0.5j * kappa
    l2 = (delta + 2.0 * lam) - 0.5j * kappa
    l3 = -2.0 * lam - 0.5j * (spec.gamma_m + 2.0 * g**2 / delta**2 * kappa)
    l_mean = 0.5 * (l1 + l2)
    s = (g / delta) * (np.exp(-1j * t * l2) - np.exp(-1j * t * l3))
    diag = np.exp(-1j * t * l_mean) * np.cos(lam * t)
    off = -1j * np.exp(-1j * t * l_mean) * np.sin(lam * t)
    u = np.array(
        [
            [diag, s, off],
            [s, np.exp(-1j * t * l3), s],
            [off, s, diag],
        ],
        dtype=complex,
    )
    return AnalyticPropagatorA(u=u, s_value=complex(s), l_mean=complex(l_mean))
