"""Helpers for the JSON wire formats: complex arrays as [re, im] pairs."""

from __future__ import annotations

import numpy as np


def complex_to_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def vector_to_pairs(v: np.ndarray) -> list[list[float]]:
    return [complex_to_pair(z) for z in np.asarray(v).ravel()]


def pairs_to_vector(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


def matrix_to_pairs(m: np.ndarray) -> list[list[float]]:
    """Row-major flattening of a complex matrix into [re, im] pairs."""
    return vector_to_pairs(np.asarray(m).ravel())


def pairs_to_matrix(pairs, dim: int) -> np.ndarray:
    return pairs_to_vector(pairs).reshape(dim, dim)
