"""Qudit-qubit states in density-matrix and Bloch form.

A bipartite state of a ``d_A``-dimensional system A and a qubit B is held
as a :class:`BlochDecomposition`: the qudit Bloch vector ``r_a`` (length
``d_A**2 - 1``), the qubit Bloch vector ``r_b`` (length 3) and the
``(d_A**2 - 1) x 3`` correlation tensor ``c`` of covariances
``<s_i x s_j> - <s_i><s_j>``.  The density matrix is recovered as

    rho = rho_A (x) rho_B + (1 / 2 d_A) sum_ij c[i, j] s_Ai (x) s_Bj

with ``rho_A = (I + r_a . s_A) / d_A`` and ``rho_B = (I + r_b . s_B) / 2``.
Standard families (X states, Schmidt pure states) and random-state
generation are provided alongside the conversions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import PAULI, make_basis
from .errors import ValidationError
from .linalg import TOL_HERM, is_hermitian

#: a state counts as positive if its smallest eigenvalue is above this
POS_TOL = -1e-10


@dataclass
class BlochDecomposition:
    """Bloch-form data of a qudit-qubit state.

    Attributes
    ----------
    d_a : int
        Dimension of subsystem A.
    r_a : ndarray
        Qudit Bloch vector, shape ``(d_a**2 - 1,)``.
    r_b : ndarray
        Qubit Bloch vector, shape ``(3,)``.
    c : ndarray
        Correlation tensor, shape ``(d_a**2 - 1, 3)``.
    """

    d_a: int
    r_a: np.ndarray
    r_b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        self.d_a = int(self.d_a)
        if self.d_a < 2:
            raise ValidationError("d_a must be at least 2")
        big_d = self.d_a ** 2 - 1
        self.r_a = np.asarray(self.r_a, dtype=float).reshape(-1)
        self.r_b = np.asarray(self.r_b, dtype=float).reshape(-1)
        self.c = np.asarray(self.c, dtype=float)
        if self.r_a.shape != (big_d,):
            raise ValidationError(
                f"r_a must have length {big_d} for d_a={self.d_a}, "
                f"got {self.r_a.shape}")
        if self.r_b.shape != (3,):
            raise ValidationError("r_b must be a 3-vector")
        if self.c.shape != (big_d, 3):
            raise ValidationError(
                f"correlation tensor must have shape ({big_d}, 3), "
                f"got {self.c.shape}")

    @property
    def n_generators(self):
        return self.d_a ** 2 - 1


def _check_joint_shape(rho, d_a):
    rho = np.asarray(rho, dtype=complex)
    dim = 2 * d_a
    if rho.shape != (dim, dim):
        raise ValidationError(
            f"state of a d_A={d_a} qudit and a qubit must be "
            f"{dim}x{dim}, got {rho.shape}")
    return rho


def trace_out_b(rho, d_a):
    """Partial trace over the qubit, returning the d_A x d_A marginal."""
    rho = _check_joint_shape(rho, d_a)
    return np.einsum("ijkj->ik", rho.reshape(d_a, 2, d_a, 2))


def trace_out_a(rho, d_a):
    """Partial trace over the qudit, returning the 2x2 qubit marginal."""
    rho = _check_joint_shape(rho, d_a)
    return np.einsum("ijil->jl", rho.reshape(d_a, 2, d_a, 2))


def decompose(rho, d_a):
    """Extract the Bloch decomposition of a joint density matrix.

    Parameters
    ----------
    rho : array_like
        Hermitian unit-trace matrix on the ``d_a * 2``-dimensional space,
        ordered as A (x) B.
    d_a : int
        Dimension of subsystem A.

    Raises
    ------
    ValidationError
        On dimension mismatch, or if ``rho`` is not Hermitian with unit
        trace within tolerance.
    """
    rho = _check_joint_shape(rho, d_a)
    if not is_hermitian(rho):
        raise ValidationError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TOL_HERM:
        raise ValidationError("density matrix does not have unit trace")
    gen_a = make_basis(d_a).generators
    rho_a = trace_out_b(rho, d_a)
    rho_b = trace_out_a(rho, d_a)
    r_a = np.einsum("mij,ji->m", gen_a, rho_a).real
    r_b = np.einsum("mij,ji->m", PAULI, rho_b).real
    # <s_Ai x s_Bj> via one reshape: Tr rho (g_i x p_j)
    rho4 = rho.reshape(d_a, 2, d_a, 2)
    joint = np.einsum("ajbk,mba,nkj->mn", rho4, gen_a, PAULI).real
    c = joint - np.outer(r_a, r_b)
    return BlochDecomposition(d_a=d_a, r_a=r_a, r_b=r_b, c=c)


def qudit_marginal(b):
    """Density matrix ``(I + r_a . s_A) / d_a`` of subsystem A."""
    gen = make_basis(b.d_a).generators
    return (np.eye(b.d_a) + np.einsum("m,mij->ij", b.r_a, gen)) / b.d_a


def qubit_marginal(b):
    """Density matrix ``(I + r_b . s_B) / 2`` of subsystem B."""
    return (np.eye(2) + np.einsum("m,mij->ij", b.r_b, PAULI)) / 2.0


def reconstruct(b):
    """Rebuild the joint density matrix from a Bloch decomposition.

    Positivity is not enforced here; use :func:`check_positive` when the
    components may lie outside the physical set.
    """
    gen = make_basis(b.d_a).generators
    rho = np.kron(qudit_marginal(b), qubit_marginal(b))
    corr = np.einsum("mn,mij,nkl->ikjl", b.c, gen, PAULI)
    rho = rho + corr.reshape(2 * b.d_a, 2 * b.d_a) / (2.0 * b.d_a)
    return rho


def check_positive(rho, tol=POS_TOL):
    """Positivity test for a Hermitian matrix.

    Returns
    -------
    (ok, min_eigenvalue) : bool, float
        ``ok`` is True when the smallest eigenvalue is at least ``tol``
        (slightly negative values are tolerated as round-trip noise).
    """
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho):
        raise ValidationError("positivity check requires a Hermitian matrix")
    w = np.linalg.eigvalsh(rho)
    lo = float(w[0])
    return lo >= tol, lo


def x_state_entries(r_a, r_b, j_x, j_y, j_z):
    """Standard-basis entries of a two-qubit X state.

    Returns ``(p_plus, p_minus, q_plus, q_minus, alpha_minus, alpha_plus)``:
    the four diagonal entries and the two anti-diagonal couplings.
    """
    p_plus = (1 + (r_a + r_b) + j_z) / 4.0
    p_minus = (1 - (r_a + r_b) + j_z) / 4.0
    q_plus = (1 + (r_a - r_b) - j_z) / 4.0
    q_minus = (1 - (r_a - r_b) - j_z) / 4.0
    alpha_minus = (j_x - j_y) / 4.0
    alpha_plus = (j_x + j_y) / 4.0
    return p_plus, p_minus, q_plus, q_minus, alpha_minus, alpha_plus


def x_state(r_a, r_b, j_x, j_y, j_z):
    """Two-qubit X state with z-aligned marginals and diagonal correlations.

    The density matrix is nonzero only on the diagonal and anti-diagonal of
    the standard basis; the Bloch data are ``r_a = (0, 0, r_a)``,
    ``r_b = (0, 0, r_b)`` and ``c = diag(j_x, j_y, j_z - r_a * r_b)``.

    Raises
    ------
    ValidationError
        If the parameters violate positivity (negative diagonal entries or
        too-large anti-diagonal couplings).
    """
    tol = 1e-12
    p_p, p_m, q_p, q_m, a_m, a_p = x_state_entries(r_a, r_b, j_x, j_y, j_z)
    if min(p_p, p_m, q_p, q_m) < -tol:
        raise ValidationError(
            "X-state parameters give a negative diagonal entry: "
            f"p={p_p:.6g},{p_m:.6g} q={q_p:.6g},{q_m:.6g}")
    if abs(a_m) > np.sqrt(max(p_p * p_m, 0.0)) + tol:
        raise ValidationError("X-state coupling |alpha_-| exceeds sqrt(p+ p-)")
    if abs(a_p) > np.sqrt(max(q_p * q_m, 0.0)) + tol:
        raise ValidationError("X-state coupling |alpha_+| exceeds sqrt(q+ q-)")
    c = np.diag([j_x, j_y, j_z - r_a * r_b]).astype(float)
    return BlochDecomposition(d_a=2, r_a=[0.0, 0.0, r_a],
                              r_b=[0.0, 0.0, r_b], c=c)


def schmidt_pure(p):
    """Pure two-qubit state ``sqrt(p)|00> + sqrt(1-p)|11>`` in Bloch form.

    Both marginals point along z with length ``2p - 1`` and the correlation
    tensor is ``diag(cx, -cx, cx**2)`` with ``cx = 2 sqrt(p(1-p))``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Schmidt weight must lie in [0, 1], got {p}")
    cx = 2.0 * np.sqrt(p * (1.0 - p))
    rz = 2.0 * p - 1.0
    c = np.diag([cx, -cx, 1.0 - rz ** 2])
    return BlochDecomposition(d_a=2, r_a=[0.0, 0.0, rz],
                              r_b=[0.0, 0.0, rz], c=c)


def random_unitary(dim, rng):
    """Haar-random unitary via QR of a Ginibre matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(d_a, rng, rank=None):
    """Random qudit-qubit state from the Wishart ensemble, in Bloch form.

    ``rank`` controls the number of Ginibre columns (defaults to full
    rank ``2 * d_a``).
    """
    dim = 2 * d_a
    if rank is None:
        rank = dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return decompose(rho, d_a)
