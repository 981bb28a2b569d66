import numpy as np
import pytest
from numpy.testing import assert_allclose

from corrlab import (
    ValidationError,
    generalized_sym_eigen3,
    hermitian_eigen,
    svd_tall,
)
from corrlab.basis import PAULI_Z
from corrlab.linalg import canonical_direction, top_eigenpair

from samplers import random_hermitian


class TestHermitianEigen:
    def test_identity(self):
        w, _ = hermitian_eigen(np.eye(2))
        assert_allclose(w, [1.0, 1.0])

    def test_pauli_z(self):
        w, v = hermitian_eigen(PAULI_Z)
        assert_allclose(w, [-1.0, 1.0])
        assert_allclose(np.abs(v.conj().T @ PAULI_Z @ v),
                        np.diag([1.0, 1.0]), atol=1e-12)

    def test_bell_marginal(self):
        # hand oracle: |phi+> = (|00> + |11>)/sqrt(2), trace out the
        # second qubit index explicitly
        psi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2)
        rho = np.outer(psi, psi).reshape(2, 2, 2, 2)
        rho_a = np.einsum("ijkj->ik", rho)
        w, _ = hermitian_eigen(rho_a)
        assert_allclose(w, [0.5, 0.5], atol=1e-14)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
        with pytest.raises(ValidationError):
            hermitian_eigen(np.ones((2, 3)))

    @pytest.mark.parametrize("dim", [2, 3, 6, 8])
    def test_residual_and_orthonormality(self, rng, dim):
        m = random_hermitian(rng, dim)
        w, v = hermitian_eigen(m)
        assert np.all(np.diff(w) >= 0)
        assert_allclose(m @ v, v @ np.diag(w), atol=1e-10)
        assert_allclose(v.conj().T @ v, np.eye(dim), atol=1e-10)
        assert abs(np.sum(w) - np.trace(m).real) < 1e-10


class TestGeneralizedEigen3:
    def test_identity_weight(self):
        pairs = generalized_sym_eigen3(np.diag([4.0, 1.0, 0.0]), np.eye(3))
        lams = [lam for lam, _ in pairs]
        assert_allclose(lams, [4.0, 1.0, 0.0], atol=1e-12)
        assert_allclose(np.abs(pairs[0][1]), [1.0, 0.0, 0.0], atol=1e-12)

    def test_diagonal_ratio(self):
        r_b = 0.5
        pairs = generalized_sym_eigen3(np.eye(3),
                                       np.diag([1.0, 1.0, 1.0 - r_b ** 2]))
        lam, vec = pairs[0]
        assert_allclose(lam, 4.0 / 3.0, rtol=1e-12)
        assert_allclose(np.abs(vec), [0.0, 0.0, 1.0], atol=1e-12)

    def test_residual_random(self, rng):
        for _ in range(20):
            a = random_hermitian(rng, 3).real
            g = rng.normal(size=(3, 3))
            b = g @ g.T + 0.5 * np.eye(3)
            for lam, vec in generalized_sym_eigen3(a, b):
                assert np.linalg.norm(a @ vec - lam * b @ vec) < 1e-10
                assert abs(np.linalg.norm(vec) - 1.0) < 1e-12

    def test_matches_congruence_transform(self, rng):
        for _ in range(20):
            a = random_hermitian(rng, 3).real
            g = rng.normal(size=(3, 3))
            b = g @ g.T + 0.5 * np.eye(3)
            w, q = np.linalg.eigh(b)
            b_isqrt = q @ np.diag(w ** -0.5) @ q.T
            ref = np.sort(np.linalg.eigvalsh(b_isqrt @ a @ b_isqrt))[::-1]
            lams = [lam for lam, _ in generalized_sym_eigen3(a, b)]
            assert_allclose(lams, ref, atol=1e-10)

    def test_singular_weight_rejected(self):
        r_b = np.array([0.0, 0.0, 1.0])
        with pytest.raises(ValidationError):
            generalized_sym_eigen3(np.eye(3), np.eye(3) - np.outer(r_b, r_b))


class TestSvdTall:
    def test_zero(self):
        _, s, _ = svd_tall(np.zeros((8, 3)))
        assert_allclose(s, 0.0)

    def test_bell_tensor(self):
        _, s, _ = svd_tall(np.diag([1.0, -1.0, 1.0]))
        assert_allclose(s, [1.0, 1.0, 1.0], atol=1e-14)

    @pytest.mark.parametrize("rows", [3, 8, 15])
    def test_reconstruction(self, rng, rows):
        c = rng.normal(size=(rows, 3))
        u, s, v = svd_tall(c)
        assert np.max(np.abs(u @ np.diag(s) @ v.T - c)) < 1e-10
        assert_allclose(u.T @ u, np.eye(3), atol=1e-12)
        assert_allclose(v.T @ v, np.eye(3), atol=1e-12)
        assert np.all(np.diff(s) <= 0) and np.all(s >= 0)

    def test_singular_values_match_gram_spectrum(self, rng):
        c = rng.normal(size=(8, 3))
        _, s, _ = svd_tall(c)
        w, _ = hermitian_eigen(c.T @ c)
        assert_allclose(np.sort(s ** 2), w, atol=1e-10)

    def test_sign_convention(self, rng):
        c = rng.normal(size=(8, 3))
        _, _, v = svd_tall(c)
        for mu in range(3):
            assert v[np.argmax(np.abs(v[:, mu])), mu] > 0


class TestTieBreaking:
    def test_canonical_direction(self):
        assert_allclose(canonical_direction([-1.0, 2.0, 0.0]), [1.0, -2.0, 0.0])
        assert_allclose(canonical_direction([0.0, -1e-15, 0.5]), [0.0, -1e-15, 0.5])

    def test_top_eigenpair_flags_clusters(self):
        pairs = [(1.0, np.array([0.0, 1.0, 0.0])),
                 (1.0 - 1e-12, np.array([-1.0, 0.0, 0.0])),
                 (0.2, np.array([0.0, 0.0, 1.0]))]
        lam, vec, degenerate = top_eigenpair(pairs)
        assert degenerate
        assert lam == 1.0
        # lexicographically largest after sign fixing is the x vector
        assert_allclose(vec, [1.0, 0.0, 0.0])

    def test_top_eigenpair_unique(self):
        pairs = [(2.0, np.array([0.0, 0.0, -1.0])),
                 (1.0, np.array([1.0, 0.0, 0.0]))]
        lam, vec, degenerate = top_eigenpair(pairs)
        assert not degenerate
        assert_allclose(vec, [0.0, 0.0, 1.0])
