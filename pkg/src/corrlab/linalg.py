"""Dense linear algebra on the small matrices used throughout the package.

Everything here operates on complex Hermitian matrices of dimension at most
2*d_A (d_A a small qudit dimension) or on real symmetric 3x3 problems, so
plain LAPACK routines are both fast and robust.  The functions add the
validation, ordering and deterministic tie-breaking conventions the rest of
the package relies on.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import ValidationError

#: tolerance on max |M - M^dagger| when validating Hermitian inputs
TOL_HERM = 1e-9
#: smallest eigenvalue a weight matrix may have before it counts as singular
TOL_PD = 1e-12
#: eigenvalues closer than this are treated as a degenerate cluster
DEGENERACY_GAP = 1e-9


def is_hermitian(m, tol=TOL_HERM):
    """True if ``m`` is square and equals its conjugate transpose within ``tol``."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m - m.conj().T))) < tol


def hermitian_eigen(m, tol=TOL_HERM):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like
        Square complex matrix, Hermitian within ``tol``.

    Returns
    -------
    (w, v) : ndarray, ndarray
        Eigenvalues in ascending order and the matching orthonormal
        eigenvectors as columns of ``v``.

    Raises
    ------
    ValidationError
        If ``m`` is not square or not Hermitian within ``tol``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if not is_hermitian(m, tol):
        raise ValidationError("matrix is not Hermitian within tolerance "
                              f"{tol:g}")
    w, v = np.linalg.eigh(m)
    return w, v


def generalized_sym_eigen3(a, b, tol_pd=TOL_PD):
    """Solve the weighted symmetric eigenproblem ``a @ k = lam * b @ k``.

    ``a`` and ``b`` are real symmetric 3x3 matrices and ``b`` must be
    positive definite.  Eigenpairs are returned sorted by descending
    eigenvalue, each eigenvector normalized to unit Euclidean length with
    a deterministic sign (first component above 1e-12 made positive).

    Raises
    ------
    ValidationError
        If ``b`` is not positive definite within ``tol_pd`` (for the
        measurement weight ``N_B = I - r_B r_B^T`` this is the case of a
        pure qubit marginal, |r_B| >= 1).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError("matrices must be square and equally sized")
    if np.min(np.linalg.eigvalsh(b)) <= tol_pd:
        raise ValidationError("weight matrix is singular (not positive "
                              "definite within tolerance)")
    w, v = scipy.linalg.eigh(a, b)
    order = np.argsort(w)[::-1]
    pairs = []
    for i in order:
        vec = v[:, i]
        vec = vec / np.linalg.norm(vec)
        pairs.append((float(w[i]), canonical_direction(vec)))
    return pairs


def svd_tall(c):
    """Thin singular value decomposition of a real ``D x 3`` matrix.

    Returns ``(u, s, v)`` with ``c = u @ diag(s) @ v.T``, ``u`` of shape
    ``(D, 3)`` with orthonormal columns, ``s`` non-increasing and ``v``
    a 3x3 orthogonal matrix.  Each right singular vector has its
    largest-magnitude component made positive (the corresponding left
    vector is flipped along with it), so the principal frame is
    reproducible across runs.
    """
    c = np.asarray(c, dtype=float)
    u, s, vt = np.linalg.svd(c, full_matrices=False)
    v = vt.T.copy()
    u = u.copy()
    for mu in range(v.shape[1]):
        j = int(np.argmax(np.abs(v[:, mu])))
        if v[j, mu] < 0:
            v[:, mu] *= -1
            u[:, mu] *= -1
    return u, s, v


def canonical_direction(v, tol=1e-12):
    """Fix the overall sign of a vector: first component with magnitude
    above ``tol`` is made positive.  Returns a copy."""
    v = np.array(v, dtype=float)
    for x in v:
        if abs(x) > tol:
            if x < 0:
                v = -v
            break
    return v


def top_eigenpair(pairs, gap=DEGENERACY_GAP):
    """Select the leading eigenpair from a descending-sorted list.

    Within a degenerate cluster (eigenvalues within ``gap`` of the
    largest) the eigenbasis is arbitrary, so the lexicographically
    largest sign-canonicalized member is chosen to keep results
    deterministic.

    Returns
    -------
    (lam, vec, degenerate) : float, ndarray, bool
    """
    lam0 = pairs[0][0]
    cluster = [canonical_direction(vec) for lam, vec in pairs
               if lam >= lam0 - gap]
    best = max(cluster, key=lambda vec: tuple(vec))
    return lam0, best, len(cluster) > 1
