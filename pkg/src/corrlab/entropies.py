"""Generalized entropies and the derived single-qubit scalar functions.

An entropy is ``S_f(rho) = sum_i f(p_i)`` over the spectrum, where ``f`` is
smooth, strictly concave on (0, 1) and vanishes at 0 and 1.  All named
forms are normalized to ``2 f(1/2) = 1`` so a maximally mixed qubit has
unit entropy:

* von Neumann      ``f(p) = -p log2 p``
* quadratic        ``f(p) = 2 p (1 - p)``      (twice one minus the purity)
* Tsallis(q)       ``f(p) = (p - p**q) / (1 - 2**(1-q))``, ``q > 0, q != 1``

For a single qubit the entropy depends only on the Bloch length ``r``
through ``qubit_entropy(r) = f((1+r)/2) + f((1-r)/2)``, a strictly
decreasing function.  Its logarithmic-derivative ratio
``concavity_ratio(r) = r * h''(r) / h'(r)`` measures the local concavity
relative to the quadratic entropy (for which it is identically 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

import numpy as np

from .errors import ValidationError
from .linalg import is_hermitian

#: spectrum values below this are clamped to zero before applying f
SPECTRUM_CLIP = 1e-14
LN2 = math.log(2.0)


@dataclass(frozen=True)
class EntropicForm:
    """A concave entropy generator with first and second derivatives.

    ``f``, ``fp`` and ``fpp`` accept scalars or ndarrays.  ``eta`` is the
    closed-form concavity ratio where one is known; when absent,
    :func:`concavity_ratio` falls back to evaluating ``r h''(r)/h'(r)``
    from the derivatives.
    """

    name: str
    f: Callable
    fp: Callable
    fpp: Callable
    eta: Optional[Callable] = field(default=None, repr=False)


def _vn_f(p):
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p > 0
    out[mask] = -p[mask] * np.log2(p[mask])
    return out if out.ndim else float(out)


def _vn_fp(p):
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore"):
        out = -(np.log(p) + 1.0) / LN2
    return out if out.ndim else float(out)


def _vn_fpp(p):
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore"):
        out = -1.0 / (p * LN2)
    return out if out.ndim else float(out)


def _vn_eta(r):
    if r < 1e-6:
        return 1.0 + 2.0 * r * r / 3.0
    return 2.0 * r / ((1.0 - r * r) * math.log((1.0 + r) / (1.0 - r)))


def _quad_f(p):
    p = np.asarray(p, dtype=float)
    out = 2.0 * p * (1.0 - p)
    return out if out.ndim else float(out)


def _quad_fp(p):
    p = np.asarray(p, dtype=float)
    out = 2.0 - 4.0 * p
    return out if out.ndim else float(out)


def _quad_fpp(p):
    p = np.asarray(p, dtype=float)
    out = np.full_like(p, -4.0)
    return out if out.ndim else float(out)


def _tsallis_f(p, q, c):
    p = np.asarray(p, dtype=float)
    out = (p - p ** q) / c
    return out if out.ndim else float(out)


def _tsallis_fp(p, q, c):
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore"):
        out = (1.0 - q * p ** (q - 1.0)) / c
    return out if out.ndim else float(out)


def _tsallis_fpp(p, q, c):
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore"):
        out = -q * (q - 1.0) * p ** (q - 2.0) / c
    return out if out.ndim else float(out)


def _quad_eta(r):
    return 1.0


def _tsallis_eta(r, q):
    if r < 1e-6:
        return 1.0 + (q - 2.0) * (q - 3.0) * r * r / 3.0
    gamma = (1.0 - r) / (1.0 + r)
    return ((q - 1.0) * r / (1.0 + r)) * (1.0 + gamma ** (q - 2.0)) \
        / (1.0 - gamma ** (q - 1.0))


def von_neumann():
    """The von Neumann entropy in bits."""
    return EntropicForm("von-neumann", _vn_f, _vn_fp, _vn_fpp, _vn_eta)


def quadratic():
    """The quadratic (linear) entropy ``2 (1 - Tr rho**2)``."""
    return EntropicForm("quadratic", _quad_f, _quad_fp, _quad_fpp, _quad_eta)


def tsallis(q):
    """The Tsallis entropy of order ``q`` (``q > 0``, ``q != 1``).

    ``q -> 1`` approaches the von Neumann entropy but is not aliased to
    it; select the named form explicitly to avoid precision loss.
    """
    q = float(q)
    if q <= 0 or q == 1.0:
        raise ValueError("Tsallis order must be positive and different "
                         f"from 1, got {q}")
    c = 1.0 - 2.0 ** (1.0 - q)
    return EntropicForm(f"tsallis({q:g})",
                        partial(_tsallis_f, q=q, c=c),
                        partial(_tsallis_fp, q=q, c=c),
                        partial(_tsallis_fpp, q=q, c=c),
                        partial(_tsallis_eta, q=q))


def from_name(text):
    """Parse an entropy selector: ``vn``, ``quad`` or ``tsallis:<q>``."""
    text = text.strip().lower()
    if text in ("vn", "von-neumann", "von_neumann"):
        return von_neumann()
    if text in ("quad", "quadratic"):
        return quadratic()
    if text.startswith("tsallis:"):
        return tsallis(float(text.split(":", 1)[1]))
    raise ValueError(f"unknown entropy {text!r}; use vn, quad or tsallis:<q>")


def entropy_from_spectrum(p, form):
    """Entropy of a probability vector; values below 1e-14 count as zero."""
    p = np.asarray(p, dtype=float)
    p = np.where(p < SPECTRUM_CLIP, 0.0, p)
    return float(np.sum(form.f(p)))


def entropy_of(rho, form):
    """Entropy ``sum_i f(p_i)`` of a density matrix.

    Raises
    ------
    ValidationError
        If ``rho`` is not a valid state (Hermitian, unit trace, positive
        within round-off).
    """
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho):
        raise ValidationError("state must be Hermitian")
    w = np.linalg.eigvalsh(rho)
    if abs(float(np.sum(w)) - 1.0) > 1e-9 or float(w[0]) < -1e-10:
        raise ValidationError("matrix is not a valid density operator")
    return entropy_from_spectrum(w, form)


def quadratic_entropy_bloch(r_a, d_a):
    """Quadratic entropy of a qudit from its Bloch vector.

    ``S_2 = 2 (1 - (1 + |r_a|**2) / d_a)``, which vanishes exactly on pure
    states (``|r_a|**2 = d_a - 1``).
    """
    r2 = float(np.dot(np.ravel(r_a), np.ravel(r_a)))
    if r2 > d_a - 1.0 + 1e-9:
        raise ValidationError(
            f"|r_a|^2 = {r2:.6g} exceeds the physical bound {d_a - 1}")
    return 2.0 * (1.0 - (1.0 + r2) / d_a)


def qubit_entropy(r, form):
    """Entropy of a single qubit with Bloch length ``r``.

    Accepts scalars or arrays; ``r`` must lie in [0, 1] (tiny round-off
    excursions are clipped).
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < -1e-9) or np.any(r > 1.0 + 1e-9):
        raise ValueError("Bloch length outside [0, 1]")
    r = np.clip(r, 0.0, 1.0)
    out = form.f((1.0 + r) / 2.0) + form.f((1.0 - r) / 2.0)
    return out if np.ndim(out) else float(out)


def qubit_entropy_prime(r, form):
    """First derivative of :func:`qubit_entropy` with respect to ``r``."""
    r = np.asarray(r, dtype=float)
    out = (form.fp((1.0 + r) / 2.0) - form.fp((1.0 - r) / 2.0)) / 2.0
    return out if np.ndim(out) else float(out)


def qubit_entropy_second(r, form):
    """Second derivative of :func:`qubit_entropy` with respect to ``r``."""
    r = np.asarray(r, dtype=float)
    out = (form.fpp((1.0 + r) / 2.0) + form.fpp((1.0 - r) / 2.0)) / 4.0
    return out if np.ndim(out) else float(out)


def concavity_ratio(r, form):
    """Local concavity ratio ``r h''(r) / h'(r)`` of the qubit entropy.

    Equals 1 identically for the quadratic entropy, exceeds 1 for the von
    Neumann entropy at ``r > 0``, and takes either side of 1 for Tsallis
    entropies depending on the order.  The ``r -> 0`` limit is 1 for every
    admissible form.

    Raises
    ------
    ValueError
        If ``r`` is outside [0, 1); the ratio diverges as ``r -> 1``.
    """
    r = float(r)
    if r < 0.0 or r >= 1.0:
        raise ValueError(f"concavity ratio needs r in [0, 1), got {r}")
    if r == 0.0:
        return 1.0
    if form.eta is not None:
        return float(form.eta(r))
    if r < 1e-6:
        return 1.0
    return r * qubit_entropy_second(r, form) / qubit_entropy_prime(r, form)
