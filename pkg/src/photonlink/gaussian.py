"""Gaussian-state algebra for a small register of bosonic modes.

Convention: quadratures interleaved per mode as (x, p), vacuum covariance
½·Identity, so a physical covariance matrix has all symplectic eigenvalues
≥ ½.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadIndexError, NegativeOccupationError


@dataclass(frozen=True)
class GaussianState:
    """Mean vector and covariance matrix of an n-mode Gaussian state."""

    mean: np.ndarray
    cov: np.ndarray
    mode_labels: tuple = ()

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size % 2 != 0:
            raise ValueError("mean must be a flat vector of even length")
        if cov.shape != (mean.size, mean.size):
            raise ValueError("cov shape inconsistent with mean")
        cov = 0.5 * (cov + cov.T)  # kill asymmetric numerical noise
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        labels = self.mode_labels or tuple(f"mode{i}" for i in range(mean.size // 2))
        object.__setattr__(self, "mode_labels", tuple(labels))

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2


def vacuum(n_modes: int, labels: tuple = ()) -> GaussianState:
    """All-modes vacuum: zero mean, covariance ½·Identity."""
    if n_modes < 1:
        raise ValueError("need at least one mode")
    return GaussianState(
        mean=np.zeros(2 * n_modes), cov=0.5 * np.eye(2 * n_modes), mode_labels=labels
    )


def thermal_state(n: float, label: str = "mode0") -> GaussianState:
    """Single-mode thermal state with mean occupation ``n``."""
    if n < 0:
        raise NegativeOccupationError("thermal occupation must be nonnegative")
    return GaussianState(
        mean=np.zeros(2), cov=(n + 0.5) * np.eye(2), mode_labels=(label,)
    )


def coherent_state(alpha: complex, label: str = "mode0") -> GaussianState:
    """Single-mode coherent state |α⟩: displaced vacuum."""
    mean = np.array([np.sqrt(2.0) * alpha.real, np.sqrt(2.0) * alpha.imag])
    return GaussianState(mean=mean, cov=0.5 * np.eye(2), mode_labels=(label,))


def tensor(states: list) -> GaussianState:
    """Tensor product: block-diagonal covariance, concatenated means."""
    if not states:
        raise ValueError("empty tensor product")
    mean = np.concatenate([s.mean for s in states])
    n = mean.size
    cov = np.zeros((n, n))
    pos = 0
    labels = []
    for s in states:
        k = s.mean.size
        cov[pos : pos + k, pos : pos + k] = s.cov
        pos += k
        labels.extend(s.mode_labels)
    return GaussianState(mean=mean, cov=cov, mode_labels=tuple(labels))


def _quad_indices(modes) -> np.ndarray:
    idx = []
    for m in modes:
        idx.extend([2 * m, 2 * m + 1])
    return np.array(idx, dtype=int)


def reduce(state: GaussianState, modes) -> GaussianState:
    """Partial trace keeping the listed modes (in the given order)."""
    modes = list(modes)
    if not modes or any(m < 0 or m >= state.n_modes for m in modes):
        raise BadIndexError(f"modes {modes} not in 0..{state.n_modes - 1}")
    idx = _quad_indices(modes)
    return GaussianState(
        mean=state.mean[idx],
        cov=state.cov[np.ix_(idx, idx)],
        mode_labels=tuple(state.mode_labels[m] for m in modes),
    )


def occupation(state: GaussianState, mode: int) -> float:
    """Mean excitation number ⟨o†o⟩ of one mode.

    N = (σ_xx + σ_pp)/2 + (μ_x² + μ_p²)/2 − ½ in the ½-vacuum convention.
    """
    if mode < 0 or mode >= state.n_modes:
        raise BadIndexError(f"mode {mode} not in 0..{state.n_modes - 1}")
    i = 2 * mode
    sxx, spp = state.cov[i, i], state.cov[i + 1, i + 1]
    mx, mp = state.mean[i], state.mean[i + 1]
    return 0.5 * (sxx + spp) + 0.5 * (mx**2 + mp**2) - 0.5


def symplectic_eigenvalues(state: GaussianState) -> np.ndarray:
    """Positive symplectic spectrum of the covariance matrix (sorted)."""
    n = state.n_modes
    omega = np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    ev = np.linalg.eigvals(1j * omega @ state.cov)
    nus = np.sort(np.abs(ev.real))
    return nus[::2]  # spectrum comes in ± pairs; keep one of each


def is_physical(state: GaussianState, tol: float = 1e-9) -> bool:
    """True when all symplectic eigenvalues are ≥ ½ − tol."""
    return bool(np.all(symplectic_eigenvalues(state) >= 0.5 - tol))
