"""Dynamical generators of the two-cavity / one-mechanical-mode interface.

All rates and couplings are expressed in units of a reference coupling G,
and times in units of 1/G.  The three bosonic modes are ordered
(cavity 1, mechanics, cavity 2) throughout.

Quadratures follow x = (o + o†)/√2, p = (o − o†)/(i√2), interleaved as
(x1, p1, xb, pb, x2, p2), with vacuum covariance ½·Identity.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import ZeroDetuningError


class DriveCase(Enum):
    """Sideband configuration of the two driving lasers.

    RED_RED: both cavities driven near their red sidebands; the mediated
    photon-photon interaction is beam-splitter-like (state exchange).
    RED_BLUE: cavity 1 red, cavity 2 blue; the mediated interaction is
    two-mode squeezing (entangling).
    """

    RED_RED = "red_red"
    RED_BLUE = "red_blue"


@dataclass(frozen=True)
class SystemSpec:
    """Physical parameters of the interface, in units of the reference coupling G."""

    omega_m: float = 50.0
    g1: float = 1.0
    g2: float = 1.0
    kappa1: float = 0.025
    kappa2: float = 0.025
    gamma_m: float = 5e-4
    delta1: float = 8.0
    delta2: float = 8.0
    n_th: float = 0.0
    drive_case: DriveCase = DriveCase.RED_RED

    def __post_init__(self):
        if self.omega_m <= 0:
            raise ValueError("omega_m must be positive")
        for name in ("g1", "g2", "kappa1", "kappa2", "gamma_m", "n_th"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @property
    def symmetric(self) -> bool:
        """Equal couplings and equal detunings."""
        return self.g1 == self.g2 and self.delta1 == self.delta2

    def with_(self, **kwargs) -> "SystemSpec":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class ModeDynamics:
    """Mode-basis Langevin generator: i dv/dt = m v + i sqrt(k) v_in.

    The basis is (a1, b, a2) for RED_RED and (a1, b, a2†) for RED_BLUE;
    damping is carried in the anti-Hermitian part of ``m`` and the input
    coupling in the diagonal matrix ``k``.
    """

    m: np.ndarray
    k: np.ndarray
    basis: tuple = ("a1", "b", "a2")


@dataclass(frozen=True)
class QuadratureDynamics:
    """Real-quadrature diffusion generator: dμ/dt = a μ, dσ/dt = aσ + σaᵀ + d."""

    a: np.ndarray
    d: np.ndarray
    rwa: bool = True


@dataclass(frozen=True)
class EffectiveParams:
    """Parameters of the adiabatically eliminated photon-photon Hamiltonian."""

    lam: float
    lambda1: float
    lambda2: float
    resonance_residual: float
    delta_lambda: float
    g0: float


def build_mode_dynamics(spec: SystemSpec) -> ModeDynamics:
    """Assemble the 3×3 complex Langevin matrix for the given drive case.

    Under RED_RED both cavity-mechanics couplings are beam-splitter-like and
    the matrix is complex symmetric; under RED_BLUE the blue-driven cavity
    enters through its creation operator and picks up a sign-flipped coupling
    in the last row.
    """
    d1 = spec.delta1 - 0.5j * spec.kappa1
    db = -0.5j * spec.gamma_m
    d2 = spec.delta2 - 0.5j * spec.kappa2
    if spec.drive_case is DriveCase.RED_RED:
        m = np.array(
            [[d1, spec.g1, 0.0], [spec.g1, db, spec.g2], [0.0, spec.g2, d2]],
            dtype=complex,
        )
        basis = ("a1", "b", "a2")
    else:
        m = np.array(
            [[d1, spec.g1, 0.0], [spec.g1, db, spec.g2], [0.0, -spec.g2, d2]],
            dtype=complex,
        )
        basis = ("a1", "b", "a2dag")
    k = np.diag([spec.kappa1, spec.gamma_m, spec.kappa2])
    return ModeDynamics(m=m, k=k, basis=basis)


def _symplectic_form(n_modes: int) -> np.ndarray:
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _hamiltonian_matrix(spec: SystemSpec, rwa: bool) -> np.ndarray:
    """Quadratic form h with H = ½ rᵀ h r over (x1,p1,xb,pb,x2,p2)."""
    h = np.zeros((6, 6))
    if rwa:
        # Interaction picture: δ a†a terms plus resonant couplings.
        h[0, 0] = h[1, 1] = spec.delta1
        if spec.drive_case is DriveCase.RED_RED:
            h[4, 4] = h[5, 5] = spec.delta2
            h[2, 4] = h[4, 2] = spec.g2  # x_b x2
            h[3, 5] = h[5, 3] = spec.g2  # p_b p2
        else:
            h[4, 4] = h[5, 5] = -spec.delta2
            h[2, 4] = h[4, 2] = spec.g2
            h[3, 5] = h[5, 3] = -spec.g2
        h[0, 2] = h[2, 0] = spec.g1
        h[1, 3] = h[3, 1] = spec.g1
    else:
        # Drive frame, time independent; counter-rotating terms retained:
        # the coupling is G_i (a_i + a_i†)(b + b†) = 2 G_i x_i x_b.
        h[2, 2] = h[3, 3] = spec.omega_m
        h[0, 0] = h[1, 1] = spec.omega_m + spec.delta1
        if spec.drive_case is DriveCase.RED_RED:
            h[4, 4] = h[5, 5] = spec.omega_m + spec.delta2
        else:
            h[4, 4] = h[5, 5] = -(spec.omega_m + spec.delta2)
        h[0, 2] = h[2, 0] = 2.0 * spec.g1
        h[2, 4] = h[4, 2] = 2.0 * spec.g2
    return h


def build_quadrature_dynamics(spec: SystemSpec, rwa: bool = True) -> QuadratureDynamics:
    """Drift and diffusion on the six quadratures.

    The drift is Ω h minus local damping at κ_i/2 (γ_m/2 for mechanics); the
    diffusion carries vacuum noise on the cavity inputs and thermal noise at
    occupation ``n_th`` on the mechanical bath.
    """
    h = _hamiltonian_matrix(spec, rwa)
    omega = _symplectic_form(3)
    damping = np.diag(
        [
            spec.kappa1 / 2,
            spec.kappa1 / 2,
            spec.gamma_m / 2,
            spec.gamma_m / 2,
            spec.kappa2 / 2,
            spec.kappa2 / 2,
        ]
    )
    a = omega @ h - damping
    nbar = spec.gamma_m * (2.0 * spec.n_th + 1.0) / 2.0
    d = np.diag(
        [spec.kappa1 / 2, spec.kappa1 / 2, nbar, nbar, spec.kappa2 / 2, spec.kappa2 / 2]
    )
    return QuadratureDynamics(a=a, d=d, rwa=rwa)


def effective_params(spec: SystemSpec) -> EffectiveParams:
    """Effective photon-photon coupling and AC-Stark shifts.

    λ = G1 G2 (1/δ1 + 1/δ2)/2 and λ_i = G_i²/δ_i.  The resonance residual is
    δ1+λ1 − (δ2+λ2) for the beam-splitter case and δ1+λ1 − (δ2−λ2) for the
    two-mode-squeezing case; zero means the interaction is resonant.
    """
    if spec.delta1 == 0.0 or spec.delta2 == 0.0:
        raise ZeroDetuningError("effective parameters undefined at zero detuning")
    lam = 0.5 * spec.g1 * spec.g2 * (1.0 / spec.delta1 + 1.0 / spec.delta2)
    lambda1 = spec.g1**2 / spec.delta1
    lambda2 = spec.g2**2 / spec.delta2
    if spec.drive_case is DriveCase.RED_RED:
        residual = (spec.delta1 + lambda1) - (spec.delta2 + lambda2)
    else:
        residual = (spec.delta1 + lambda1) - (spec.delta2 - lambda2)
    return EffectiveParams(
        lam=lam,
        lambda1=lambda1,
        lambda2=lambda2,
        resonance_residual=residual,
        delta_lambda=lambda1 - lambda2,
        g0=float(np.hypot(spec.g1, spec.g2)),
    )
