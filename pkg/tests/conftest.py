import numpy as np
import pytest

from photonlink import GaussianState


def symplectic_form(n_modes: int) -> np.ndarray:
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def random_symplectic(rng: np.random.Generator, n_modes: int) -> np.ndarray:
    """Random symplectic matrix S = exp(Ω h) with h symmetric."""
    from scipy.linalg import expm

    n = 2 * n_modes
    h = rng.normal(size=(n, n))
    h = 0.5 * (h + h.T)
    return expm(symplectic_form(n_modes) @ h)


def random_physical_state(rng: np.random.Generator, n_modes: int) -> GaussianState:
    """Random Gaussian state: thermal covariance conjugated by a symplectic."""
    s = random_symplectic(rng, n_modes)
    nus = 0.5 + rng.uniform(0.0, 3.0, size=n_modes)
    cov = s @ np.diag(np.repeat(nus, 2)) @ s.T
    mean = rng.normal(scale=1.5, size=2 * n_modes)
    return GaussianState(mean=mean, cov=cov)


def quad_to_amps(mean: np.ndarray) -> np.ndarray:
    """Quadrature mean vector to complex mode amplitudes."""
    return (mean[::2] + 1j * mean[1::2]) / np.sqrt(2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
