"""Shared random-object generators for the test suite."""

import numpy as np

import corrlab as cl


def random_directions(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


def angle_mod_sign(u, v):
    """Angle between two directions identified under sign flips, via the
    chord formula (stable down to machine precision, unlike arccos)."""
    u = np.asarray(u, float) / np.linalg.norm(u)
    v = np.asarray(v, float) / np.linalg.norm(v)
    if np.dot(u, v) < 0:
        v = -v
    return 2.0 * np.arcsin(min(1.0, np.linalg.norm(u - v) / 2.0))


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def full_rank_state(d_a, rng, mix=0.5):
    """Random state blended with the maximally mixed one, so every
    eigenvalue of the joint state and of both marginals is bounded away
    from zero."""
    b = cl.random_state(d_a, rng)
    dim = 2 * d_a
    rho = (1 - mix) * cl.reconstruct(b) + mix * np.eye(dim) / dim
    return cl.decompose(rho, d_a)


def scale_correlations(b, eps):
    """Shrink the correlation tensor; positivity is preserved since the
    result is a convex blend of the original state with the product of
    its marginals."""
    return cl.BlochDecomposition(b.d_a, b.r_a, b.r_b, b.c * eps)


def zero_ra_state(d_a, rng, with_rb=True, c_scale=0.2, min_gap=0.0):
    """State with a maximally mixed qudit marginal and random correlations,
    shrunk until positive.  ``min_gap`` enforces a relative separation of
    the top two singular values of the correlation tensor."""
    big_d = d_a ** 2 - 1
    for _ in range(200):
        r_b = (random_directions(rng, 1)[0] * rng.uniform(0.0, 0.7)
               if with_rb else np.zeros(3))
        c = rng.normal(size=(big_d, 3)) * c_scale
        s = np.linalg.svd(c, compute_uv=False)
        if min_gap and (s[0] - s[1]) < min_gap * s[0]:
            continue
        for _ in range(40):
            b = cl.BlochDecomposition(d_a, np.zeros(big_d), r_b, c)
            ok, _ = cl.check_positive(cl.reconstruct(b))
            if ok:
                return b
            c = 0.7 * c
    raise RuntimeError("failed to build a positive zero-marginal state")


def random_pure_two_qubit(rng, p=None):
    """Schmidt state with Haar-random local frames applied."""
    if p is None:
        p = rng.uniform()
    psi = np.zeros(4, dtype=complex)
    psi[0] = np.sqrt(p)
    psi[3] = np.sqrt(1.0 - p)
    u = np.kron(cl.random_unitary(2, rng), cl.random_unitary(2, rng))
    psi = u @ psi
    return cl.decompose(np.outer(psi, psi.conj()), 2)
