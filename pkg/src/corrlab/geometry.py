"""The correlation ellipsoid of post-measurement Bloch vectors.

Sweeping the measurement direction on the qubit over the unit sphere, the
conditional Bloch vectors of A trace out an ellipsoid.  It is centered at
``r_a - c rt_b`` with ``rt_b = r_b / (1 - |r_b|**2)``; its principal
directions are the eigenvectors of ``c N^-1 c^T`` (``N = I - r_b r_b^T``)
and the semi-axis along eigenvalue ``lam`` has length
``sqrt(lam / (1 - |r_b|**2))``.  For ``r_b = 0`` the ellipsoid is centered
at ``r_a`` with the singular values of ``c`` as semi-axes, and for any
pure two-qubit state it is the whole Bloch sphere of A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import canonical_direction

#: eigenvalues below max * RANK_RTOL count as zero when ranking the axes
RANK_RTOL = 1e-12


@dataclass
class CorrelationEllipsoid:
    """Principal-axes data of the set of conditional Bloch vectors.

    Attributes
    ----------
    center : ndarray
        Center point in A's Bloch space, shape ``(D,)``.
    directions : ndarray
        Orthonormal principal directions as rows, shape ``(rank, D)``.
    semi_axes : ndarray
        Semi-axis lengths, non-increasing, shape ``(rank,)``.
    rank : int
        Number of non-degenerate principal axes (0 to 3).
    """

    center: np.ndarray
    directions: np.ndarray
    semi_axes: np.ndarray
    rank: int


def _weight_inverse_sqrt(r_b):
    """``(I - r_b r_b^T)**-1/2`` computed from the rank-one structure."""
    rb2 = float(r_b @ r_b)
    if rb2 < 1e-30:
        return np.eye(3)
    hat = r_b / np.sqrt(rb2)
    return np.eye(3) + (1.0 / np.sqrt(1.0 - rb2) - 1.0) * np.outer(hat, hat)


def correlation_ellipsoid(b):
    """Compute the correlation ellipsoid of a state.

    Raises
    ------
    ValidationError
        If the qubit marginal is pure (|r_b| >= 1 the geometry degenerates:
        one outcome direction has zero probability).
    """
    rb2 = float(b.r_b @ b.r_b)
    if rb2 >= 1.0 - 1e-12:
        raise ValidationError("qubit marginal is pure; the ellipsoid "
                              "construction requires |r_b| < 1")
    c_n = b.c @ _weight_inverse_sqrt(b.r_b)
    u, s, _ = np.linalg.svd(c_n, full_matrices=False)
    lam = s ** 2
    if lam[0] <= 0.0:
        rank = 0
    else:
        rank = int(np.sum(lam > RANK_RTOL * lam[0]))
    center = b.r_a - (b.c @ b.r_b) / (1.0 - rb2)
    directions = np.array([canonical_direction(u[:, i]) for i in range(rank)])
    directions = directions.reshape(rank, b.n_generators)
    return CorrelationEllipsoid(center=center,
                                directions=directions,
                                semi_axes=s[:rank] / np.sqrt(1.0 - rb2),
                                rank=rank)


def fibonacci_sphere(n):
    """``n`` quasi-uniform unit vectors from the golden-angle spiral."""
    if n < 1:
        raise ValueError("need at least one sample point")
    i = np.arange(n)
    z = 1.0 - (2.0 * i + 1.0) / n
    radius = np.sqrt(np.maximum(0.0, 1.0 - z ** 2))
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    return np.column_stack([radius * np.cos(phi), radius * np.sin(phi), z])


def sample_surface(b, n):
    """Conditional Bloch vectors for ``n`` quasi-uniform directions.

    Returns an array of shape ``(2n, D)``: the ``+k`` branch for every
    direction followed by the ``-k`` branch.  Each point satisfies the
    ellipsoid equation (for full-rank correlation tensors) and the two
    branches of one direction are collinear with ``r_a``.
    """
    rb2 = float(b.r_b @ b.r_b)
    if rb2 >= 1.0 - 1e-12:
        raise ValidationError("qubit marginal is pure; conditional states "
                              "are undefined for antipodal outcomes")
    kk = fibonacci_sphere(n)
    dots = kk @ b.r_b
    plus = b.r_a[None, :] + (kk @ b.c.T) / (1.0 + dots)[:, None]
    minus = b.r_a[None, :] - (kk @ b.c.T) / (1.0 - dots)[:, None]
    return np.vstack([plus, minus])
