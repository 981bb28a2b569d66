import numpy as np
import pytest
from numpy.testing import assert_allclose

import corrlab as cl
from corrlab import ValidationError

from samplers import full_rank_state


def ellipsoid_residuals(b, points):
    """Quadratic-form oracle: evaluate the ellipsoid equation at each point."""
    rb2 = float(b.r_b @ b.r_b)
    n_b = np.eye(3) - np.outer(b.r_b, b.r_b)
    m = b.c @ np.linalg.inv(n_b) @ b.c.T
    m_inv = np.linalg.pinv(m)
    shift = b.c @ b.r_b / (1.0 - rb2)
    vals = []
    for pt in points:
        delta = pt - b.r_a + shift
        vals.append(float(delta @ ((1.0 - rb2) * m_inv) @ delta))
    return np.array(vals)


class TestCorrelationEllipsoid:
    def test_unbiased_qubit_gives_singular_values(self, rng):
        c = rng.normal(size=(3, 3)) * 0.2
        b = cl.BlochDecomposition(2, rng.normal(size=3) * 0.2, np.zeros(3), c)
        ell = cl.correlation_ellipsoid(b)
        _, s, _ = cl.svd_tall(c)
        assert_allclose(ell.center, b.r_a, atol=1e-14)
        assert_allclose(ell.semi_axes, s[:ell.rank], atol=1e-12)

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.85])
    def test_pure_state_fills_bloch_sphere(self, p):
        ell = cl.correlation_ellipsoid(cl.schmidt_pure(p))
        assert ell.rank == 3
        assert_allclose(ell.center, 0.0, atol=1e-9)
        assert_allclose(ell.semi_axes, 1.0, atol=1e-9)

    def test_no_correlations(self, rng):
        b = cl.BlochDecomposition(2, [0.1, 0.0, 0.3], [0.0, 0.2, 0.0],
                                  np.zeros((3, 3)))
        ell = cl.correlation_ellipsoid(b)
        assert ell.rank == 0
        assert_allclose(ell.center, b.r_a)

    def test_rank_counts_degenerate_axes(self):
        b = cl.x_state(0.0, 0.0, 0.4, 0.0, 0.2)
        ell = cl.correlation_ellipsoid(b)
        assert ell.rank == 2
        assert_allclose(ell.semi_axes, [0.4, 0.2], atol=1e-12)

    def test_pure_qubit_marginal_rejected(self):
        b = cl.BlochDecomposition(2, np.zeros(3), [0.0, 0.0, 1.0],
                                  np.zeros((3, 3)))
        with pytest.raises(ValidationError):
            cl.correlation_ellipsoid(b)

    def test_directions_orthonormal(self, rng):
        for d_a in (2, 3):
            b = cl.random_state(d_a, rng)
            ell = cl.correlation_ellipsoid(b)
            gram = ell.directions @ ell.directions.T
            assert_allclose(gram, np.eye(ell.rank), atol=1e-10)

    def test_eigenvalue_match_with_weighted_problem(self, rng):
        # the D x D operator form and the 3x3 weighted problem share
        # their non-zero spectrum
        for d_a in (2, 3):
            b = cl.random_state(d_a, rng)
            rb2 = float(b.r_b @ b.r_b)
            ell = cl.correlation_ellipsoid(b)
            n_b = np.eye(3) - np.outer(b.r_b, b.r_b)
            pairs = cl.generalized_sym_eigen3(b.c.T @ b.c, n_b)
            lams = np.array([lam for lam, _ in pairs])[:ell.rank]
            assert_allclose(ell.semi_axes ** 2 * (1.0 - rb2), lams,
                            atol=1e-10)


class TestFibonacciSphere:
    def test_unit_and_deterministic(self):
        pts = cl.fibonacci_sphere(500)
        assert pts.shape == (500, 3)
        assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
        assert_allclose(pts, cl.fibonacci_sphere(500))

    def test_quasi_uniform_coverage(self):
        pts = cl.fibonacci_sphere(2000)
        # mean direction cancels and the second moment is isotropic
        assert np.linalg.norm(pts.mean(axis=0)) < 5e-3
        assert_allclose(pts.T @ pts / 2000, np.eye(3) / 3, atol=5e-3)

    def test_needs_points(self):
        with pytest.raises(ValueError):
            cl.fibonacci_sphere(0)


class TestSampleSurface:
    def test_points_satisfy_ellipsoid_equation(self, rng):
        for d_a in (2, 3):
            for _ in range(5):
                b = full_rank_state(d_a, rng)
                pts = cl.sample_surface(b, 40)
                res = ellipsoid_residuals(b, pts)
                assert_allclose(res, 1.0, atol=1e-9)

    def test_unbiased_qubit_symmetry(self, rng):
        c = rng.normal(size=(3, 3)) * 0.3
        b = cl.BlochDecomposition(2, rng.normal(size=3) * 0.2, np.zeros(3), c)
        pts = cl.sample_surface(b, 25)
        assert_allclose(pts[:25] + pts[25:], np.tile(2 * b.r_a, (25, 1)),
                        atol=1e-12)

    def test_bell_points_on_unit_sphere(self):
        pts = cl.sample_surface(cl.schmidt_pure(0.5), 30)
        assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)

    def test_chords_run_through_the_marginal(self, rng):
        for _ in range(10):
            b = cl.random_state(2, rng)
            n = 20
            pts = cl.sample_surface(b, n)
            for i in range(n):
                u = pts[i] - b.r_a
                w = pts[n + i] - b.r_a
                nu, nw = np.linalg.norm(u), np.linalg.norm(w)
                if nu < 1e-12 or nw < 1e-12:
                    continue
                assert np.linalg.norm(u / nu + w / nw) < 1e-10
