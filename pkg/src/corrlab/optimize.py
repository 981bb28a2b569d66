"""Conditional entropy minimization over projective measurement directions.

Three routes are provided:

* :func:`minimize_quadratic` -- exact for the quadratic entropy at any
  correlation strength.  The entropy gain is a ratio of quadratic forms,
  so the best direction solves the weighted eigenproblem
  ``c^T c k = lam (I - r_b r_b^T) k`` and the minimum is
  ``S_2(rho_A) - (2/d_a) lam_max``.
* :func:`minimize_weak_correlation` -- second-order expansion for any
  entropic form.  The correlation tensor is reweighted by a Hessian
  factor encoding the local concavity of the entropy at the qudit
  marginal, giving ``c^T L c k = lam (I - r_b r_b^T) k``.  Exact when the
  form is quadratic (the Hessian reduces to the identity) and accurate to
  third order in the correlation strength otherwise.
* :func:`minimize_oracle` -- brute-force search over a quasi-uniform
  direction grid followed by deterministic local refinement.  Slow but
  assumption-free; the validation reference for the other two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import make_basis
from .entropies import concavity_ratio, qubit_entropy_prime
from .errors import ApproximationError, ValidationError
from .geometry import fibonacci_sphere
from .linalg import (
    canonical_direction,
    generalized_sym_eigen3,
    hermitian_eigen,
    svd_tall,
    top_eigenpair,
)
from .measurement import conditional_entropy_batch, marginal_entropy
from .states import qudit_marginal

#: eigenvalue differences below this merge into one R entry
NEAR_DEGENERATE = 1e-8
#: residual allowed when checking that a Bloch vector sits on a principal axis
ALIGN_TOL = 1e-10


@dataclass
class OptimizationResult:
    """Outcome of a conditional entropy minimization.

    Attributes
    ----------
    k_opt : ndarray
        Optimal measurement direction (unit 3-vector, sign-canonicalized;
        ``-k_opt`` is always equivalent).
    lambda_max : float
        Largest eigenvalue of the associated weighted eigenproblem; for
        the oracle, the equivalent value ``(d_a/2) * (S_f(A) - s_min)``.
    s_min : float
        Minimal conditional entropy found.
    method : str
        One of ``exact-quadratic``, ``weak-correlation``, ``oracle``.
    degenerate : bool
        True when the optimum is (numerically) non-unique, e.g. isotropic
        correlation tensors; only ``s_min`` is then meaningful.
    """

    k_opt: np.ndarray
    lambda_max: float
    s_min: float
    method: str
    degenerate: bool = False


def weight_matrix(r_b):
    """The qubit anisotropy weight ``I - r_b r_b^T``."""
    r_b = np.asarray(r_b, dtype=float)
    return np.eye(3) - np.outer(r_b, r_b)


def hessian_general(rho_a, basis, form):
    """Scaled entropy Hessian at a qudit state, in a generator basis.

    Element ``(m, n)`` is ``(1/4d) sum_ij R_ij <i|g_m|j><j|g_n|i>`` over
    the eigenbasis of ``rho_a``, where ``R_ij`` is the difference quotient
    of ``f'`` between eigenvalues (``-f''`` on and near the diagonal).
    Positive definite for strictly concave ``f``; reduces to the identity
    for the quadratic entropy and to ``|f''(1/d)|/4 * I`` at the maximally
    mixed state.

    Raises
    ------
    ApproximationError
        If the spectrum makes ``R`` non-finite (rank-deficient state with
        an entropy whose derivatives diverge at zero).
    """
    w, v = hermitian_eigen(rho_a)
    d = basis.dim
    pi = w[:, None]
    pj = w[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        quotient = (form.fp(pi) - form.fp(pj)) / (pj - pi)
        merged = -form.fpp((pi + pj) / 2.0)
    r_mat = np.where(np.abs(pi - pj) < NEAR_DEGENERATE, merged, quotient)
    if not np.all(np.isfinite(r_mat)):
        raise ApproximationError(
            "entropy Hessian undefined: spectrum of the marginal reaches "
            "zero where the entropic derivatives diverge")
    elems = np.einsum("ai,mab,bj->mij", v.conj(), basis.generators, v)
    lam = np.einsum("ij,mij,nji->mn", r_mat, elems, elems).real / (4.0 * d)
    return (lam + lam.T) / 2.0


def hessian_two_qubit(r_a, form):
    """Closed-form 3x3 entropy Hessian for a qubit marginal.

    Equals ``-h'(r)/(2r) [I + (eta(r) - 1) rhat rhat^T]`` in terms of the
    qubit entropy ``h`` and its concavity ratio ``eta``; the ``r -> 0``
    limit ``|h''(0)|/2 * I`` is used below ``r = 1e-8``.
    """
    r_a = np.asarray(r_a, dtype=float).reshape(3)
    r = float(np.linalg.norm(r_a))
    if r < 1e-8:
        return 0.25 * abs(form.fpp(0.5)) * np.eye(3)
    slope = qubit_entropy_prime(r, form)
    if not math.isfinite(slope):
        raise ApproximationError("entropy Hessian undefined at a pure "
                                 "qubit marginal")
    hat = r_a / r
    eta = concavity_ratio(r, form)
    return (-slope / (2.0 * r)) * (np.eye(3)
                                   + (eta - 1.0) * np.outer(hat, hat))


def _solve_weighted(m, r_b):
    pairs = generalized_sym_eigen3(m, weight_matrix(r_b))
    lam, k, degenerate = top_eigenpair(pairs)
    return max(lam, 0.0), k, degenerate


def minimize_quadratic(b):
    """Exact quadratic-entropy minimization.

    Raises
    ------
    ValidationError
        If the qubit marginal is pure (the weight matrix is singular).
    """
    from .entropies import quadratic_entropy_bloch

    lam, k, degenerate = _solve_weighted(b.c.T @ b.c, b.r_b)
    s_min = quadratic_entropy_bloch(b.r_a, b.d_a) - (2.0 / b.d_a) * lam
    return OptimizationResult(k_opt=k, lambda_max=lam, s_min=s_min,
                              method="exact-quadratic",
                              degenerate=degenerate)


def minimize_weak_correlation(b, form):
    """Second-order minimization for a general entropic form.

    Builds the entropy Hessian at the qudit marginal, solves the
    reweighted eigenproblem and returns
    ``s_min = S_f(rho_A) - (2/d_a) lam_max``.  Coincides with
    :func:`minimize_quadratic` when ``form`` is the quadratic entropy.
    """
    lam_f = hessian_general(qudit_marginal(b), make_basis(b.d_a), form)
    lam, k, degenerate = _solve_weighted(b.c.T @ lam_f @ b.c, b.r_b)
    s_min = marginal_entropy(b, form) - (2.0 / b.d_a) * lam
    return OptimizationResult(k_opt=k, lambda_max=lam, s_min=s_min,
                              method="weak-correlation",
                              degenerate=degenerate)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _line_minimum(g, lo, hi, tol):
    """Golden-section minimum of ``g`` on [lo, hi], seeded by a coarse scan
    so a locally multimodal section cannot mislead the bracketing."""
    ts = np.linspace(lo, hi, 9)
    vals = [g(t) for t in ts]
    i = int(np.argmin(vals))
    best_t, best_v = float(ts[i]), vals[i]
    a, b = ts[max(i - 1, 0)], ts[min(i + 1, len(ts) - 1)]
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    gc, gd = g(c), g(d)
    while (b - a) > tol:
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - _INVPHI * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + _INVPHI * (b - a)
            gd = g(d)
    for t, v in ((c, gc), (d, gd)):
        if v < best_v:
            best_t, best_v = float(t), v
    return best_t, best_v


def _tangent_frame(k):
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(k)))] = 1.0
    e1 = np.cross(k, axis)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(k, e1)


def minimize_oracle(b, form, grid_n=2000, refine_iters=80):
    """Brute-force conditional entropy minimization.

    Evaluates the conditional entropy on a Fibonacci point set folded onto
    one hemisphere (the entropy is even in ``k``), then refines the best
    cell with alternating golden-section line searches along geodesics,
    down to an angular tolerance of 1e-10.  Deterministic for fixed
    inputs and independent of any worker partitioning.

    Parameters
    ----------
    grid_n : int
        Number of grid points (default 2000).
    refine_iters : int
        Maximum number of refinement rounds (default 80).
    """
    kk = fibonacci_sphere(grid_n)
    flip = kk[:, 2] < 0.0
    kk[flip] *= -1.0
    vals = conditional_entropy_batch(b, kk, form)
    vmin = float(np.min(vals))
    ties = np.flatnonzero(vals == vmin)
    best = max((kk[i] for i in ties), key=lambda v: tuple(v))

    near = np.flatnonzero(vals <= vmin + 1e-9)
    cosines = np.abs(kk[near] @ best)
    degenerate = bool(np.any(cosines < math.cos(0.2)))

    def evaluate(k):
        return float(conditional_entropy_batch(b, k[None, :], form)[0])

    k_opt = np.array(best, dtype=float)
    s_min = vmin
    h = 3.0 * math.sqrt(4.0 * math.pi / grid_n)
    for _ in range(refine_iters):
        if h <= 1e-10:
            break
        k_before = k_opt
        for e in _tangent_frame(k_opt):
            def section(t, k0=k_opt, e0=e):
                cand = math.cos(t) * k0 + math.sin(t) * e0
                return evaluate(cand / np.linalg.norm(cand))

            t_best, v_best = _line_minimum(section, -h, h,
                                           max(h * 1e-2, 1e-11))
            if v_best < s_min:
                cand = math.cos(t_best) * k_opt + math.sin(t_best) * e
                k_opt = cand / np.linalg.norm(cand)
                s_min = v_best
        moved = math.acos(min(1.0, abs(float(k_opt @ k_before))))
        if moved < h / 4.0:
            h /= 4.0

    if k_opt[2] < 0.0:
        k_opt = -k_opt
    k_opt = canonical_direction(k_opt)
    lam = (b.d_a / 2.0) * (marginal_entropy(b, form) - s_min)
    return OptimizationResult(k_opt=k_opt, lambda_max=max(lam, 0.0),
                              s_min=s_min, method="oracle",
                              degenerate=degenerate)


def _principal_axis_index(vec, axes, what):
    """Index of the column of ``axes`` parallel to ``vec`` (length > 0)."""
    length = np.linalg.norm(vec)
    hat = vec / length
    i = int(np.argmax(np.abs(axes.T @ hat)))
    residual = np.linalg.norm(vec - (vec @ axes[:, i]) * axes[:, i])
    if residual > ALIGN_TOL:
        raise ValidationError(
            f"{what} is not parallel to a principal axis of the "
            f"correlation tensor (residual {residual:.2e})")
    return i


def aligned_axes_decrease(b, form, k):
    """Closed-form second-order entropy gain for axis-aligned states.

    Requires a two-qubit state whose marginal Bloch vectors each lie along
    a principal axis of the correlation tensor (e.g. any X state).  In the
    principal frame with singular values ``s_mu`` the gain is::

        |h'(r_a)|/(2 r_a) * sum_mu w_mu s_mu^2 k_mu^2 / (1 - (r_b . k)^2)

    where ``w_mu`` is the concavity ratio on the axis carrying ``r_a`` and
    1 elsewhere (prefactor ``|h''(0)|/2`` when ``r_a = 0``).
    """
    if b.d_a != 2:
        raise ValidationError("aligned-axes form requires d_a = 2")
    k = np.asarray(k, dtype=float).reshape(3)
    u, s, v = svd_tall(b.c)
    weights = np.ones(3)
    ra_len = float(np.linalg.norm(b.r_a))
    if ra_len >= 1e-8:
        i = _principal_axis_index(b.r_a, u, "qudit Bloch vector")
        weights[i] = concavity_ratio(ra_len, form)
        pref = abs(qubit_entropy_prime(ra_len, form)) / (2.0 * ra_len)
    else:
        pref = abs(form.fpp(0.5)) / 4.0
    if float(np.linalg.norm(b.r_b)) >= 1e-8:
        _principal_axis_index(b.r_b, v, "qubit Bloch vector")
    kp = v.T @ k
    denom = 1.0 - float(b.r_b @ k) ** 2
    return pref * float(np.sum(weights * s ** 2 * kp ** 2)) / denom


def aligned_axes_max(b, form):
    """Maximum of :func:`aligned_axes_decrease` over the principal axes."""
    _, _, v = svd_tall(b.c)
    return max(aligned_axes_decrease(b, form, v[:, mu]) for mu in range(3))
