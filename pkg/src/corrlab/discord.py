"""Quantum discord: exact projective minimization and quadratic estimates.

The discord of a qudit-qubit state for measurements on the qubit is

    D = min_k S(A|B_k) - [S(rho_AB) - S(rho_B)]

with von Neumann entropies.  :func:`discord_exact` performs the
minimization with the brute-force oracle; :func:`discord_weak` replaces
``min_k S(A|B_k)`` by the second-order weighted-eigenproblem estimate,
which is accurate to third order in the correlation strength.  A fully
quadratic estimate of the mutual information and of the per-direction
discord of axis-aligned states is also provided, plus the machinery for
phase diagrams that classify which measurement axis is optimal.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass

import numpy as np

from .basis import PAULI, make_basis
from .entropies import entropy_from_spectrum, qubit_entropy, von_neumann
from .errors import ApproximationError, ValidationError
from .linalg import hermitian_eigen, svd_tall
from .measurement import marginal_entropy
from .optimize import (
    aligned_axes_decrease,
    hessian_general,
    minimize_oracle,
    minimize_quadratic,
    _solve_weighted,
)
from .states import (
    qubit_marginal,
    qudit_marginal,
    reconstruct,
    x_state,
)

LN2 = math.log(2.0)
#: an oracle optimum further than this (radians) from every principal axis
#: of the correlation tensor is flagged as a crossover point
CROSSOVER_ANGLE = 0.05

_VN = von_neumann()


@dataclass
class DiscordResult:
    """Discord value together with the optimizing direction.

    ``crossover`` marks exact optima that are not aligned with any
    principal axis of the correlation tensor; such directions occur only
    in narrow transition windows.
    """

    discord: float
    mutual_info: float
    k_opt: np.ndarray
    method: str
    crossover: bool = False


def mutual_information(b):
    """Von Neumann mutual information ``S(A) + S(B) - S(AB)`` in bits."""
    s_a = marginal_entropy(b, _VN)
    s_b = float(qubit_entropy(min(np.linalg.norm(b.r_b), 1.0), _VN))
    s_ab = entropy_from_spectrum(np.linalg.eigvalsh(reconstruct(b)), _VN)
    return s_a + s_b - s_ab


def _quantum_conditional(b):
    """The measurement-independent part ``S(rho_AB) - S(rho_B)``."""
    s_b = float(qubit_entropy(min(np.linalg.norm(b.r_b), 1.0), _VN))
    s_ab = entropy_from_spectrum(np.linalg.eigvalsh(reconstruct(b)), _VN)
    return s_ab - s_b


def _is_crossover(b, k_opt):
    _, s, v = svd_tall(b.c)
    if s[0] < 1e-12:
        return False
    cosines = np.abs(v.T @ k_opt)
    return bool(np.all(cosines < math.cos(CROSSOVER_ANGLE)))


def discord_exact(b, grid_n=2000, refine_iters=80):
    """Discord from the brute-force minimization of the conditional entropy."""
    res = minimize_oracle(b, _VN, grid_n=grid_n, refine_iters=refine_iters)
    disc = res.s_min - _quantum_conditional(b)
    return DiscordResult(discord=disc,
                         mutual_info=mutual_information(b),
                         k_opt=res.k_opt,
                         method="exact-oracle",
                         crossover=_is_crossover(b, res.k_opt))


def discord_weak(b):
    """Second-order discord estimate ``I(A,B) - (2/d_a) lam_max``.

    ``lam_max`` is the top eigenvalue of the Hessian-reweighted problem
    for the von Neumann entropy.

    Raises
    ------
    ApproximationError
        If the qudit marginal is rank deficient (the von Neumann Hessian
        diverges).
    """
    lam_f = hessian_general(qudit_marginal(b), make_basis(b.d_a), _VN)
    lam, k, _ = _solve_weighted(b.c.T @ lam_f @ b.c, b.r_b)
    info = mutual_information(b)
    return DiscordResult(discord=info - (2.0 / b.d_a) * lam,
                         mutual_info=info,
                         k_opt=k,
                         method="weak-correlation")


def mutual_info_quadratic(b):
    """Quadratic (in the correlation tensor) mutual information estimate.

    ``I(A,B) ~ (1/2) Cvec^T L Cvec`` where ``L`` contracts products of
    generator matrix elements in the eigenbases of the two marginals with
    logarithmic difference quotients of the joint product spectrum.  For
    maximally mixed marginals this reduces to ``sum C_mn^2 / (2 ln 2)``.

    Raises
    ------
    ApproximationError
        If either marginal is rank deficient.
    """
    wa, va = hermitian_eigen(qudit_marginal(b))
    wb, vb = hermitian_eigen(qubit_marginal(b))
    if wa[0] < 1e-12 or wb[0] < 1e-12:
        raise ApproximationError("quadratic mutual information needs "
                                 "full-rank marginals")
    gen_a = make_basis(b.d_a).generators
    sa = np.einsum("ai,mab,bj->mij", va.conj(), gen_a, va)
    sb = np.einsum("ai,mab,bj->mij", vb.conj(), PAULI, vb)
    prod = np.einsum("i,k->ik", wa, wb)
    x1 = prod[:, None, :, None]
    x2 = prod[None, :, None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        quotient = np.log(x1 / x2) / (x1 - x2)
    r_mat = np.where(np.abs(x1 - x2) < 1e-12, 2.0 / (x1 + x2), quotient)
    r_mat = r_mat / LN2
    h = np.einsum("mn,mij,nkl->ijkl", b.c, sa, sb)
    quad = float(np.einsum("ijkl,ijkl->", r_mat, np.abs(h) ** 2).real)
    return quad / (8.0 * b.d_a ** 2)


def _aligned_mutual_info_quadratic(ra, rb, cx, cy, cz):
    total = cz ** 2 / ((1.0 - ra ** 2) * (1.0 - rb ** 2))
    for nu in (1.0, -1.0):
        s = ra + nu * rb
        if abs(s) < 1e-8:
            ratio = 2.0 / (1.0 - ra ** 2)
        else:
            ratio = (math.log((1.0 + ra) / (1.0 - ra))
                     + math.log((1.0 + nu * rb) / (1.0 - nu * rb))) / s
        total += (cx - nu * cy) ** 2 * ratio / 4.0
    return total / (2.0 * LN2)


def _require_z_aligned(b):
    if b.d_a != 2:
        raise ValidationError("requires a two-qubit state")
    offdiag = b.c - np.diag(np.diag(b.c))
    if (max(abs(b.r_a[0]), abs(b.r_a[1]), abs(b.r_b[0]), abs(b.r_b[1]))
            > 1e-10 or np.max(np.abs(offdiag)) > 1e-10):
        raise ValidationError("state is not z-aligned: marginals must point "
                              "along z and the correlation tensor must be "
                              "diagonal")


def discord_quadratic_form(b, k):
    """Per-direction discord of a z-aligned state, fully quadratic in C.

    Combines the closed-form quadratic mutual information with the
    aligned-axes entropy gain; non-negative for small correlation tensors
    and exactly zero along z for purely classical (diagonal) correlations.

    Raises
    ------
    ValidationError
        If the state is not z-aligned.
    ApproximationError
        If a marginal is rank deficient.
    """
    _require_z_aligned(b)
    ra = float(b.r_a[2])
    rb = float(b.r_b[2])
    if abs(ra) >= 1.0 - 1e-12 or abs(rb) >= 1.0 - 1e-12:
        raise ApproximationError("quadratic discord form needs full-rank "
                                 "marginals")
    cx, cy, cz = np.diag(b.c)
    info = _aligned_mutual_info_quadratic(ra, rb, cx, cy, cz)
    return info - aligned_axes_decrease(b, _VN, k)


def transition_zone(r_a, r_b, form):
    """Critical ratio ``C_x^2 / C_z^2`` where the optimal axis switches.

    For X-type states with equal transverse couplings the optimum moves
    from the z axis to the x-y plane when ``C_x^2`` exceeds
    ``eta(r_a) * C_z^2 / (1 - r_b**2)``; this returns that coefficient
    ``eta(r_a) / (1 - r_b**2)``.
    """
    from .entropies import concavity_ratio

    if not 0.0 <= r_a < 1.0 or not 0.0 <= r_b < 1.0:
        raise ValueError("marginal lengths must lie in [0, 1)")
    return concavity_ratio(r_a, form) / (1.0 - r_b ** 2)


def _sector_point(args):
    r_a, j_x, r_b, j_z, grid_n = args
    try:
        b = x_state(r_a, r_b, j_x, j_x, j_z)
    except ValidationError:
        return "invalid"
    quad_z = minimize_quadratic(b).k_opt[2] ** 2 > 0.5
    vn_z = discord_exact(b, grid_n=grid_n).k_opt[2] ** 2 > 0.5
    if quad_z and vn_z:
        return "B"
    if not quad_z and not vn_z:
        return "A"
    return "C"


def sector_scan(r_a_values, j_x_values, r_b, j_z, grid_n=2000, jobs=1):
    """Classify optimal-axis agreement on a grid of X states.

    For each ``(r_a, j_x)`` with ``j_y = j_x`` and the given ``r_b, j_z``,
    labels the state ``A`` when both the quadratic and the von Neumann
    entropy are minimized by an equatorial measurement, ``B`` when both
    prefer the z axis, ``C`` when they disagree, and ``invalid`` when the
    parameters violate positivity.  Rows are ordered by (r_a, j_x) and the
    result does not depend on ``jobs``.
    """
    points = [(float(ra), float(jx), float(r_b), float(j_z), int(grid_n))
              for ra in r_a_values for jx in j_x_values]
    if jobs > 1:
        with multiprocessing.Pool(int(jobs)) as pool:
            labels = pool.map(_sector_point, points, chunksize=16)
    else:
        labels = [_sector_point(p) for p in points]
    return [(ra, jx, label)
            for (ra, jx, _, _, _), label in zip(points, labels)]
