"""Traceless Hermitian operator bases.

For dimension ``d`` the basis consists of the ``d**2 - 1`` generalized
Gell-Mann matrices, rescaled so that ``Tr s_i s_j = d * delta_ij``.  With
that normalization the ``d = 2`` case is exactly the Pauli triple
(sigma_x, sigma_y, sigma_z).  Ordering is deterministic: symmetric
off-diagonal pairs first, then antisymmetric pairs, then the diagonal
generators.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
#: stacked Pauli matrices, shape (3, 2, 2)
PAULI = np.stack([PAULI_X, PAULI_Y, PAULI_Z])


@dataclass(frozen=True)
class OperatorBasis:
    """An orthogonal traceless Hermitian operator set for one subsystem.

    Attributes
    ----------
    dim : int
        Hilbert-space dimension ``d``.
    generators : ndarray
        Array of shape ``(d**2 - 1, d, d)`` with ``Tr g[i] @ g[j] = d * delta_ij``.
    """

    dim: int
    generators: np.ndarray

    def __len__(self):
        return self.generators.shape[0]


@functools.lru_cache(maxsize=None)
def make_basis(d: int) -> OperatorBasis:
    """Build the rescaled generalized Gell-Mann basis for dimension ``d``.

    Raises
    ------
    ValueError
        If ``d < 2``.
    """
    if d < 2:
        raise ValueError(f"subsystem dimension must be at least 2, got {d}")
    scale = np.sqrt(d / 2.0)
    gens = []
    for j in range(d):
        for k in range(j + 1, d):
            g = np.zeros((d, d), dtype=complex)
            g[j, k] = g[k, j] = 1.0
            gens.append(scale * g)
    for j in range(d):
        for k in range(j + 1, d):
            g = np.zeros((d, d), dtype=complex)
            g[j, k] = -1j
            g[k, j] = 1j
            gens.append(scale * g)
    for l in range(1, d):
        g = np.zeros((d, d), dtype=complex)
        g[np.arange(l), np.arange(l)] = 1.0
        g[l, l] = -l
        gens.append(scale * np.sqrt(2.0 / (l * (l + 1))) * g)
    generators = np.stack(gens)
    generators.setflags(write=False)
    return OperatorBasis(dim=d, generators=generators)
