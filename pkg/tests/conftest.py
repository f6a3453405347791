from __future__ import annotations

import numpy as np
import pytest


@pytest.fixture
def j2() -> np.ndarray:
    return np.array([[0, 1], [0, 0]], dtype=complex)


@pytest.fixture
def j3() -> np.ndarray:
    return np.diag([1.0, 1.0], 1).astype(complex)


def haar(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def ginibre(dim: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(dim)


def random_normal_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    u = haar(dim, rng)
    eig = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return (u * eig) @ u.conj().T
