import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsmoments.assembly import CollisionModel, assemble_system
from hsmoments.errors import IllPosedBoundaryError, InconsistencyError, InconsistentDataError, InvalidArgumentError
from hsmoments.halfspace import (
    decompose,
    evaluate_derivative,
    evaluate_solution,
    generalized_modes,
    make_solution,
    signature_counts,
    solve_halfspace,
)
from hsmoments.indices import build_index_set

from conftest import KRAMERS_GENERATORS, MODELS, c1_index_sets


def _dense_signature(D):
    D = np.atleast_2d(D)
    r, c = D.shape
    big = np.zeros((r + c, r + c))
    big[:r, r:] = D
    big[r:, :r] = D.T
    ev = np.linalg.eigvalsh(big)
    tol = 1e-10 * max(1.0, np.abs(ev).max())
    return int(np.sum(np.abs(ev) <= tol)), int(np.sum(ev > tol)), int(np.sum(ev < -tol))


class TestSignature:
    def test_scalar(self):
        assert signature_counts(np.array([[2.0]])) == (0, 1, 1)

    def test_row(self):
        assert signature_counts(np.array([[1.0, 0.0]])) == (1, 1, 1) == _dense_signature([[1.0, 0.0]])

    def test_zero(self):
        assert signature_counts(np.zeros((2, 3))) == (5, 0, 0)

    @given(
        st.integers(1, 8),
        st.integers(1, 8),
        st.integers(0, 8),
        st.integers(0, 2**32 - 1),
    )
    def test_matches_dense_eigensolve(self, rows, cols, rank, seed):
        rng = np.random.default_rng(seed)
        rank = min(rank, rows, cols)
        D = rng.standard_normal((rows, rank)) @ rng.standard_normal((rank, cols))
        assert signature_counts(D) == _dense_signature(D)


class TestGeneralizedModes:
    def test_two_by_two(self):
        T, Lam, L, R = generalized_modes(np.array([[0.0, 1.0], [1.0, 0.0]]), np.eye(2))
        np.testing.assert_allclose(Lam, [1.0])
        np.testing.assert_allclose(T[:, 0], [1 / math.sqrt(2)] * 2)

    def test_zero_pencil(self):
        T, Lam, _, _ = generalized_modes(np.zeros((2, 2)), np.eye(2))
        assert Lam.size == 0 and T.shape == (2, 0)

    def test_count_mismatch(self):
        with pytest.raises(InconsistencyError):
            generalized_modes(np.array([[0.0, 1.0], [1.0, 0.0]]), np.eye(2), expected=2)

    def test_singular_q(self):
        with pytest.raises(InconsistencyError):
            generalized_modes(np.eye(2), np.diag([1.0, 0.0]))

    def test_eigen_relation(self):
        rng = np.random.default_rng(3)
        B = rng.standard_normal((5, 5))
        A33 = B + B.T
        C = rng.standard_normal((5, 5))
        Q33 = C @ C.T + 5 * np.eye(5)
        T, Lam, L, R = generalized_modes(A33, Q33)
        np.testing.assert_allclose(A33 @ T, Q33 @ T * Lam, atol=1e-12)
        np.testing.assert_allclose(T.T @ Q33 @ T, np.eye(len(Lam)), atol=1e-12)
        assert np.all(np.diff(Lam) <= 0)


class TestDecomposition:
    def test_kramers(self, kramers4):
        dec = decompose(assemble_system(kramers4))
        assert (dec.p1, dec.p2, dec.r1, dec.r2, dec.nplus) == (1, 0, 1, 0, 3)

    def test_temperature_jump(self, jump3):
        dec = decompose(assemble_system(jump3))
        assert (dec.p1, dec.p2, dec.r1, dec.r2) == (2, 1, 1, 0)
        assert dec.nplus == dec.n - 2

    def test_definite_collision(self, kramers4):
        sys_ = assemble_system(kramers4, collision=lambda s: np.eye(len(s)))
        dec = decompose(sys_)
        assert dec.p == dec.r == 0
        np.testing.assert_allclose(dec.V3.T @ dec.V3, np.eye(len(kramers4)), atol=1e-14)

    @pytest.mark.parametrize("model", MODELS, ids=lambda m: m.kind)
    @given(s=c1_index_sets())
    @settings(max_examples=25)
    def test_structure(self, model, s):
        sys_ = assemble_system(s, model)
        dec = decompose(sys_)
        A, Q = sys_.A, sys_.Q
        size = len(s)
        V = np.hstack([dec.V1, dec.V2, dec.V3])
        np.testing.assert_allclose(V.T @ V, np.eye(size), atol=1e-11)
        np.testing.assert_allclose(Q @ dec.G, 0, atol=1e-12)
        np.testing.assert_allclose(dec.G.T @ A @ dec.G @ dec.X, 0, atol=1e-11)
        np.testing.assert_allclose(dec.V3.T @ A @ dec.V1, 0, atol=1e-11)
        assert np.linalg.matrix_rank(np.hstack([dec.G, A @ dec.G @ dec.X, dec.V3])) == size
        np.linalg.cholesky(dec.Q33)
        assert dec.nplus == dec.n - (dec.p + dec.r) // 2
        if dec.r2 == 0:
            assert dec.nplus + dec.p1 == dec.n
        assert np.all(dec.Lam > 0)
        # the modal vectors keep the even/odd split
        R_e = dec.R[: dec.m3]
        np.testing.assert_allclose(R_e.T @ R_e, 0.5 * np.eye(dec.nplus), atol=1e-10)

    def test_counts_dict(self, kramers4):
        counts = decompose(assemble_system(kramers4)).counts()
        assert counts == dict(m=4, n=4, p1=1, p2=0, r1=1, r2=0, n_plus=3)


class TestSolution:
    @pytest.fixture
    def dec(self):
        return decompose(assemble_system(build_index_set(KRAMERS_GENERATORS, 12, 3), CollisionModel.shakhov()))

    def test_zero_data(self, dec):
        B = np.hstack([np.zeros((dec.n, dec.m)), np.eye(dec.n)])
        assert np.all(solve_halfspace(dec, B, np.zeros(dec.n)) == 0)

    def test_identity_case(self, dec):
        B = np.linalg.pinv(dec.V3 @ dec.T)
        g = (B @ dec.V3 @ dec.T)[:, 0]
        np.testing.assert_allclose(solve_halfspace(dec, B, g), np.eye(dec.nplus)[0], atol=1e-12)

    def test_rank_deficient(self, dec):
        with pytest.raises(IllPosedBoundaryError):
            solve_halfspace(dec, np.zeros((dec.n, dec.m + dec.n)), np.ones(dec.n))

    def test_incompatible(self, dec):
        B = (dec.V3 @ dec.T).T
        extra = np.vstack([B, B[:1]])
        g = np.zeros(dec.nplus + 1)
        g[-1] = 1.0
        with pytest.raises(InconsistentDataError):
            solve_halfspace(dec, extra, g)

    def test_ode_residual(self, dec):
        sys_ = assemble_system(build_index_set(KRAMERS_GENERATORS, 12, 3), CollisionModel.shakhov())
        sol = make_solution(dec, np.linspace(1, 2, dec.nplus))
        ys = np.linspace(0, 10, 41)
        w, dw = sol(ys), sol.derivative(ys)
        res = dw @ sys_.A.T + w @ sys_.Q.T
        assert np.abs(res).max() <= 1e-10 * np.abs(w).max()
        np.testing.assert_allclose(w @ (dec.G.T @ sys_.A).T, 0, atol=1e-12)
        # finite-difference check that the analytic derivative is the derivative
        h = 1e-6
        fd = (sol(ys + h) - sol(ys[:] + 0)) / h
        np.testing.assert_allclose(fd, dw, atol=1e-5)

    def test_decay(self, dec):
        sol = make_solution(dec, np.ones(dec.nplus))
        far = 60 * dec.Lam.max()
        assert np.linalg.norm(sol(far)) < 1e-20
        norms = np.linalg.norm(sol(np.linspace(0, far, 50)), axis=1)
        bound = np.linalg.norm(dec.modes, 2) * np.exp(-np.linspace(0, far, 50) / dec.Lam.max())
        assert np.all(norms <= bound * np.linalg.norm(sol.z0) * (1 + 1e-12))

    def test_zero_amplitudes(self, dec):
        sol = make_solution(dec, np.zeros(dec.nplus))
        assert not np.any(sol(np.linspace(0, 5, 7)))

    def test_negative_y(self, dec):
        sol = make_solution(dec, np.ones(dec.nplus))
        with pytest.raises(InvalidArgumentError):
            evaluate_solution(sol, -1.0)
        with pytest.raises(InvalidArgumentError):
            evaluate_derivative(sol, np.array([0.0, -0.5]))

    def test_scalar_and_array_agree(self, dec):
        sol = make_solution(dec, np.arange(1.0, dec.nplus + 1))
        np.testing.assert_allclose(sol(0.7), sol(np.array([0.7]))[0])
