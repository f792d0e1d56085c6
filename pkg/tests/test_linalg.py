import numpy as np
import pytest
from numpy.testing import assert_allclose

from qcoherence import (
    DensityMatrix,
    DimensionMismatchError,
    HermitianObservable,
    NotHermitianError,
    NotOrthonormalError,
    NotPSDError,
    OrthonormalBasis,
    Subspace,
    TraceNotOneError,
    fourier_basis,
    hermitian_eigendecomposition,
    operator_norm,
    purity,
    sample_haar_unitary,
    validate_density,
    von_neumann_entropy,
)
from qcoherence.linalg import RECON_SCALE, orthonormality_defect

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def _random_hermitian(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2.0


def _random_state(n, rng, rank=None):
    rank = rank or n
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    w = g @ g.conj().T
    return w / np.trace(w).real


class TestValidateDensity:
    def test_maximally_mixed_qubit(self):
        rho = validate_density(np.eye(2) / 2)
        assert rho.dim == 2

    def test_offdiagonal_family_is_valid(self):
        eps = 0.1
        rho = validate_density([[0.5, 0.5 * eps], [0.5 * eps, 0.5]])
        assert rho.dim == 2

    def test_trace_failure_names_magnitude(self):
        with pytest.raises(TraceNotOneError, match="1.000e-01"):
            validate_density(np.diag([1.0, 0.1]))

    def test_not_hermitian(self):
        with pytest.raises(NotHermitianError):
            validate_density([[0.5, 0.5], [0.0, 0.5]])

    def test_not_psd(self):
        with pytest.raises(NotPSDError):
            validate_density(np.diag([1.5, -0.5]))

    def test_non_square(self):
        with pytest.raises(DimensionMismatchError):
            validate_density(np.zeros((2, 3)))

    def test_matrix_is_read_only(self):
        rho = validate_density(np.eye(3) / 3)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestEigendecomposition:
    def test_diagonal_matrix(self):
        w, basis = hermitian_eigendecomposition(np.diag([1.0, 2.0, 3.0]).astype(complex))
        assert_allclose(w, [1.0, 2.0, 3.0])
        # standard basis up to phase
        assert_allclose(np.abs(basis.vectors), np.eye(3), atol=1e-12)

    def test_pauli_x(self):
        w, basis = hermitian_eigendecomposition(PAULI_X)
        assert_allclose(w, [-1.0, 1.0])
        for j in range(2):
            assert_allclose(PAULI_X @ basis.column(j), w[j] * basis.column(j), atol=1e-12)
        assert_allclose(np.abs(basis.vectors), np.full((2, 2), 1 / np.sqrt(2)), atol=1e-12)

    def test_reconstruction_on_random_matrices(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            n = int(rng.integers(2, 33))
            a = _random_hermitian(n, rng)
            w, basis = hermitian_eigendecomposition(a)
            v = basis.vectors
            recon = (v * w) @ v.conj().T
            assert np.abs(recon - a).max() < RECON_SCALE * n
            assert orthonormality_defect(v) < 1e-12

    def test_observable_caches_decomposition(self):
        rng = np.random.default_rng(5)
        obs = HermitianObservable.from_matrix(_random_hermitian(6, rng))
        w, basis = hermitian_eigendecomposition(obs)
        assert w is obs.spectrum
        assert basis is obs.eigenbasis
        assert np.all(np.diff(obs.spectrum) >= 0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            HermitianObservable.from_matrix([[0.0, 1.0], [0.0, 0.0]])


def _power_iteration_norm(m, rng, starts=10_000, iters=500):
    """Independent largest-singular-value oracle: best of `starts` random unit
    vectors, then power iteration on M^H M."""
    n = m.shape[0]
    xs = rng.standard_normal((starts, n)) + 1j * rng.standard_normal((starts, n))
    xs /= np.linalg.norm(xs, axis=1)[:, None]
    gains = np.linalg.norm(xs @ m.T, axis=1)
    sampled_max = float(gains.max())
    v = xs[int(gains.argmax())]
    h = m.conj().T @ m
    for _ in range(iters):
        v = h @ v
        v /= np.linalg.norm(v)
    return sampled_max, float(np.sqrt(np.vdot(v, h @ v).real))


class TestOperatorNorm:
    def test_zero_matrix(self):
        assert operator_norm(np.zeros((4, 4))) == 0.0

    def test_unitary_has_norm_one(self):
        u = sample_haar_unitary(5, 123)
        assert abs(operator_norm(u) - 1.0) < 1e-12

    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_random_vector_oracle(self, n):
        rng = np.random.default_rng(n)
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        sampled_max, oracle = _power_iteration_norm(m, rng)
        norm = operator_norm(m)
        assert norm >= sampled_max - 1e-12
        assert abs(norm - oracle) < 1e-6

    def test_unitary_invariance(self):
        rng = np.random.default_rng(9)
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        base = operator_norm(m)
        for seed in range(10):
            u = sample_haar_unitary(6, 2 * seed)
            v = sample_haar_unitary(6, 2 * seed + 1)
            assert abs(operator_norm(u @ m @ v) - base) < 1e-10


class TestEntropyAndPurity:
    def test_pure_state(self):
        rho = DensityMatrix.pure(np.array([1.0, 1.0j]) / np.sqrt(2))
        assert von_neumann_entropy(rho) < 1e-12
        assert abs(purity(rho) - 1.0) < 1e-12

    @pytest.mark.parametrize("n", [2, 3, 8])
    def test_maximally_mixed(self, n):
        rho = DensityMatrix.maximally_mixed(n)
        assert abs(von_neumann_entropy(rho) - np.log(n)) < 1e-12
        assert abs(purity(rho) - 1.0 / n) < 1e-12

    def test_binary_entropy_value(self):
        # -0.55 ln 0.55 - 0.45 ln 0.45, evaluated directly
        rho = validate_density(np.diag([0.55, 0.45]))
        assert abs(von_neumann_entropy(rho) - 0.6881388137135884) < 1e-12

    def test_purity_by_hand(self):
        assert abs(purity(validate_density(np.diag([0.7, 0.3]))) - 0.58) < 1e-14

    def test_ranges_on_random_states(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            n = int(rng.integers(2, 17))
            rho = validate_density(_random_state(n, rng))
            p = purity(rho)
            s = von_neumann_entropy(rho)
            assert 1.0 / n - 1e-12 <= p <= 1.0 + 1e-12
            assert -1e-12 <= s <= np.log(n) + 1e-12


class TestBasesAndSubspaces:
    def test_standard_basis(self):
        b = OrthonormalBasis.standard(4)
        assert b.dim == 4
        assert_allclose(b.column(2), np.eye(4)[:, 2])

    def test_from_columns_rejects_non_orthonormal(self):
        with pytest.raises(NotOrthonormalError):
            OrthonormalBasis.from_columns([[1.0, 1.0], [0.0, 1.0]])

    @pytest.mark.parametrize("n", [2, 3, 4, 7])
    def test_fourier_basis_is_orthonormal(self, n):
        assert orthonormality_defect(fourier_basis(n).vectors) < 1e-12

    def test_subspace_projector_idempotent(self):
        rng = np.random.default_rng(3)
        u = sample_haar_unitary(6, rng)
        f = Subspace.from_vectors(u[:, :3])
        assert f.dim == 3 and f.ambient_dim == 6
        p = f.projector()
        assert np.abs(p @ p - p).max() < 1e-12

    def test_subspace_rejects_skewed_frame(self):
        with pytest.raises(NotOrthonormalError):
            Subspace.from_vectors(np.array([[1.0, 0.9], [0.0, 0.5]]))

    def test_single_vector_frame(self):
        f = Subspace.from_vectors(np.array([1.0, 1.0]) / np.sqrt(2))
        assert f.dim == 1 and f.ambient_dim == 2
