"""Local measurements on the qubit and the resulting conditional entropies.

A projective measurement along the unit vector ``k`` has outcomes with
probability ``p(+-k) = (1 +- r_b . k) / 2`` and leaves subsystem A in the
state with Bloch vector ``r_a +- c k / (1 +- r_b . k)``.  The conditional
entropy is the probability-weighted entropy of those conditional states;
by concavity it never exceeds the entropy of the unmeasured marginal.
Rank-one POVMs ``{ r_k * |k><k| }`` with ``sum r_k = 2`` and
``sum r_k k = 0`` are supported through the same machinery.
"""

from __future__ import annotations

import numpy as np
import scipy.optimize

from .basis import make_basis
from .entropies import (
    entropy_from_spectrum,
    qubit_entropy,
    qubit_entropy_prime,
)
from .errors import ValidationError
from .states import qudit_marginal

#: tolerance on |k| - 1 for measurement directions
TOL_UNIT = 1e-12
#: tolerance on the POVM resolution of identity
TOL_POVM = 1e-10


def _check_direction(k):
    k = np.asarray(k, dtype=float).reshape(-1)
    if k.shape != (3,):
        raise ValidationError("measurement direction must be a 3-vector")
    if abs(np.linalg.norm(k) - 1.0) > TOL_UNIT:
        raise ValidationError("measurement direction must be a unit vector")
    return k


def post_measurement(b, k, sign):
    """Conditional Bloch vector of A and outcome probability.

    Parameters
    ----------
    b : BlochDecomposition
    k : array_like
        Unit 3-vector giving the measured spin direction on B.
    sign : {+1, -1}
        Which of the two projective outcomes to condition on.

    Returns
    -------
    (r_out, prob) : ndarray, float

    Raises
    ------
    ValidationError
        If the requested outcome has zero probability (|r_b| = 1 with k
        antiparallel), leaving the conditional state undefined.
    """
    k = _check_direction(k)
    if sign not in (1, -1):
        raise ValidationError("sign must be +1 or -1")
    prob = (1.0 + sign * float(b.r_b @ k)) / 2.0
    if prob <= 0.0:
        raise ValidationError("conditional state undefined: outcome has "
                              "zero probability")
    r_out = b.r_a + sign * (b.c @ k) / (2.0 * prob)
    return r_out, prob


def marginal_entropy(b, form):
    """Entropy of the unmeasured qudit marginal."""
    if b.d_a == 2:
        return float(qubit_entropy(min(np.linalg.norm(b.r_a), 1.0), form))
    w = np.linalg.eigvalsh(qudit_marginal(b))
    return entropy_from_spectrum(w, form)


def conditional_entropy_batch(b, directions, form):
    """Conditional entropies for many projective directions at once.

    Parameters
    ----------
    directions : ndarray
        Array of shape ``(n, 3)`` of unit vectors.

    Returns
    -------
    ndarray of shape ``(n,)``
    """
    kk = np.atleast_2d(np.asarray(directions, dtype=float))
    dots = kk @ b.r_b
    out = np.zeros(kk.shape[0])
    for sign in (1.0, -1.0):
        probs = (1.0 + sign * dots) / 2.0
        live = probs > 1e-15
        if not np.any(live):
            continue
        shift = sign * (kk[live] @ b.c.T) / (2.0 * probs[live, None])
        r_out = b.r_a[None, :] + shift
        if b.d_a == 2:
            lengths = np.minimum(np.linalg.norm(r_out, axis=1), 1.0)
            s_vals = qubit_entropy(lengths, form)
        else:
            gen = make_basis(b.d_a).generators
            rho = (np.eye(b.d_a)[None, :, :]
                   + np.einsum("nm,mij->nij", r_out, gen)) / b.d_a
            w = np.linalg.eigvalsh(rho)
            w = np.where(w < 1e-14, 0.0, w)
            s_vals = np.sum(form.f(w), axis=1)
        out[live] += probs[live] * np.atleast_1d(s_vals)
    return out


def conditional_entropy(b, k, form):
    """Average entropy of A after a projective measurement of B along ``k``.

    Zero-probability outcomes contribute nothing.  The result is bounded
    above by the marginal entropy of A and vanishes for pure joint states.
    """
    k = _check_direction(k)
    return float(conditional_entropy_batch(b, k[None, :], form)[0])


def validate_povm(elements, tol=TOL_POVM):
    """Check a rank-one POVM ``[(weight, direction), ...]``.

    The weights must be positive with ``sum w = 2`` and
    ``sum w * k = 0`` (resolution of identity) within ``tol``.

    Returns the elements as ``(weights, directions)`` arrays.
    """
    weights = np.array([w for w, _ in elements], dtype=float)
    dirs = np.array([_check_direction(k) for _, k in elements])
    if np.any(weights <= 0):
        raise ValidationError("POVM weights must be positive")
    if abs(float(np.sum(weights)) - 2.0) > tol:
        raise ValidationError("POVM weights must sum to 2")
    if float(np.linalg.norm(weights @ dirs)) > tol:
        raise ValidationError("POVM directions do not resolve the identity")
    return weights, dirs


def povm_conditional_entropy(b, elements, form):
    """Conditional entropy after a rank-one POVM on B.

    ``elements`` is a sequence of ``(weight, direction)`` pairs.  For the
    projective pair ``[(1, k), (1, -k)]`` this coincides with
    :func:`conditional_entropy`.
    """
    weights, dirs = validate_povm(elements)
    probs = (1.0 + dirs @ b.r_b) / 2.0
    total = 0.0
    for w, k, p in zip(weights, dirs, probs):
        if p <= 1e-15:
            continue
        r_out = b.r_a + (b.c @ k) / (2.0 * p)
        if b.d_a == 2:
            s = qubit_entropy(min(np.linalg.norm(r_out), 1.0), form)
        else:
            gen = make_basis(b.d_a).generators
            rho = (np.eye(b.d_a)
                   + np.einsum("m,mij->ij", r_out, gen)) / b.d_a
            s = entropy_from_spectrum(np.linalg.eigvalsh(rho), form)
        total += w * p * s
    return float(total)


def entropy_decrease(b, k, form):
    """Average entropy gain of A from measuring B along ``k``.

    For the quadratic entropy this is computed from the exact closed form
    ``(2/d_a) * k^T c^T c k / (k^T (I - r_b r_b^T) k)``, which is
    independent of ``r_a``; otherwise it is the difference between the
    marginal and conditional entropies.  Non-negative in both cases.
    """
    k = _check_direction(k)
    if form.name == "quadratic":
        ck = b.c @ k
        denom = 1.0 - float(b.r_b @ k) ** 2
        return (2.0 / b.d_a) * float(ck @ ck) / denom
    return marginal_entropy(b, form) - conditional_entropy(b, k, form)


def measurement_equivalent(b, k, form, estimate=False):
    """Bloch-length increase of A equivalent to measuring B along ``k``.

    The exact value is the unique ``delta >= 0`` with
    ``qubit_entropy(|r_a| + delta) =`` the conditional entropy, found by
    bisection (the qubit entropy is strictly decreasing).  With
    ``estimate=True`` the second-order approximation is returned instead:
    a quadratic form over the concavity-corrected correlation tensor for
    ``|r_a| > 0``, and the universal limit
    ``|c k| / sqrt(1 - (r_b . k)**2)`` for a maximally mixed marginal.

    Only defined for two-qubit states.
    """
    if b.d_a != 2:
        raise ValidationError("measurement equivalent requires d_a = 2")
    k = _check_direction(k)
    r_len = float(np.linalg.norm(b.r_a))
    if estimate:
        denom = 1.0 - float(b.r_b @ k) ** 2
        if r_len < 1e-8:
            ck = b.c @ k
            return float(np.sqrt(ck @ ck / denom))
        from .optimize import hessian_two_qubit
        lam = hessian_two_qubit(b.r_a, form)
        ck = b.c @ k
        quad = float(ck @ lam @ ck) / denom
        return quad / abs(qubit_entropy_prime(r_len, form))

    target = conditional_entropy(b, k, form)
    if target >= qubit_entropy(r_len, form):
        return 0.0

    def gap(delta):
        return qubit_entropy(min(r_len + delta, 1.0), form) - target

    return float(scipy.optimize.bisect(gap, 0.0, 1.0 - r_len, xtol=1e-12))


def random_rank_one_povm(rng, n_elements):
    """Random rank-one POVM with ``n_elements`` outcomes.

    The first ``n_elements - 1`` directions are drawn isotropically with
    weights uniform in (0.5, 1.5); the final element cancels the weighted
    direction sum exactly and all weights are rescaled so they add up
    to 2.  Draws where the balancing weight would be tiny are rejected,
    so every returned weight is comfortably positive.
    """
    if n_elements < 3:
        raise ValueError("a rank-one POVM on a qubit needs >= 3 elements")
    for _ in range(1000):
        dirs = rng.normal(size=(n_elements - 1, 3))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        w = rng.uniform(0.5, 1.5, size=n_elements - 1)
        balance = -(w @ dirs)
        w_last = float(np.linalg.norm(balance))
        if w_last < 0.2:
            continue
        dirs = np.vstack([dirs, balance / w_last])
        w = np.append(w, w_last)
        w *= 2.0 / np.sum(w)
        return list(zip(w.tolist(), [d.copy() for d in dirs]))
    raise RuntimeError("failed to sample a POVM; try another seed")
