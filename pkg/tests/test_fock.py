import math

import numpy as np
import pytest

from quaplectic.algebra import gen
from quaplectic.fock import (FockBasis, RepresentationParams, build_basis,
                             commutator_suite, grading_value,
                             hermite_oracle_op, interior_indices, k_grading,
                             k_grading_diagonal, ladder_op, rep_group_element,
                             rho_Z_op, u_number_op)
from quaplectic.groups import HeisenbergElement, h_compose, h_inverse, zeta_hat
from quaplectic.operators import commutator

P1 = RepresentationParams(c=1.0, s=1.0)


class TestBasis:
    def test_single_mode(self):
        b = build_basis(0, 2)
        assert b.states == ((0,), (1,), (2,))

    def test_two_modes(self):
        b = build_basis(1, 1)
        assert b.states == ((0, 0), (0, 1), (1, 0))

    def test_stars_and_bars_count(self):
        assert build_basis(3, 8).dim == math.comb(12, 4)

    def test_negative_nmax(self):
        with pytest.raises(ValueError):
            build_basis.__wrapped__(1, -1)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            RepresentationParams(c=0.0, s=1.0)
        with pytest.raises(ValueError):
            RepresentationParams(c=1.0, s=0.0)
        assert RepresentationParams(c=2.0, s=2.0).a == 0.0


class TestLadder:
    def test_spatial_raise_amplitude(self):
        b = build_basis(1, 8)
        op = ladder_op(1, "+", b)
        col = op.mat[:, b.state_index((0, 3))].toarray().ravel()
        assert col[b.state_index((0, 4))] == pytest.approx(2.0)
        assert np.count_nonzero(col) == 1

    def test_vacuum_annihilated(self):
        b = build_basis(1, 4)
        assert ladder_op(1, "-", b).mat[:, b.state_index((0, 0))].nnz == 0

    def test_mode0_role_reversal(self):
        b = build_basis(1, 8)
        op = ladder_op(0, "+", b)  # lowers k_0
        col = op.mat[:, b.state_index((2, 0))].toarray().ravel()
        assert col[b.state_index((1, 0))] == pytest.approx(math.sqrt(2.0))
        op = ladder_op(0, "-", b)  # raises k_0
        col = op.mat[:, b.state_index((0, 0))].toarray().ravel()
        assert col[b.state_index((1, 0))] == pytest.approx(1.0)

    def test_truncation_dropped(self):
        b = build_basis(0, 3)
        op = ladder_op(0, "-", b)  # raising on mode 0
        assert op.mat[:, b.state_index((3,))].nnz == 0

    def test_invalid_mode(self):
        with pytest.raises(IndexError):
            ladder_op(2, "+", build_basis(1, 2))

    def test_adjoint_pairing_exact(self):
        b = build_basis(2, 6)
        for a in range(3):
            assert (ladder_op(a, "+", b).dagger() - ladder_op(a, "-", b)).max_abs() == 0.0


class TestRhoZ:
    def test_diagonal_spatial(self):
        b = build_basis(1, 8)
        op = rho_Z_op(1, 1, P1, b)
        i = b.state_index((0, 3))
        assert op.mat[i, i] == pytest.approx(3.0)

    def test_raising_pair(self):
        b = build_basis(1, 8)
        op = rho_Z_op(1, 0, P1, b)
        col = op.mat[:, b.state_index((0, 0))].toarray().ravel()
        assert col[b.state_index((1, 1))] == pytest.approx(1.0)

    def test_diagonal_mode0_offset(self):
        # normative product form gives (k_0 + 1)/s on the time diagonal
        b = build_basis(1, 8)
        op = rho_Z_op(0, 0, P1, b)
        i = b.state_index((0, 0))
        assert op.mat[i, i] == pytest.approx(1.0)

    def test_s_scaling(self):
        b = build_basis(1, 6)
        p = RepresentationParams(c=1.0, s=2.0)
        i = b.state_index((0, 2))
        assert rho_Z_op(1, 1, p, b).mat[i, i] == pytest.approx(1.0)

    def test_s_zero_rejected(self):
        with pytest.raises(ValueError):
            RepresentationParams(c=1.0, s=0.0)


class TestGrading:
    def test_u_number_offset(self):
        # eta-contraction sits at (k - 1)/s: offset -1 against the grading
        b = build_basis(1, 6)
        op = u_number_op(P1, b)
        assert op.mat[0, 0] == pytest.approx(-1.0)
        i = b.state_index((2, 3))
        assert op.mat[i, i] == pytest.approx((-2 + 3) - 1)

    def test_grading_values(self):
        assert grading_value((2, 3)) == 1
        assert grading_value((0, 0, 0)) == 0

    def test_blocks(self):
        b = build_basis(1, 2)
        blocks = {k: sorted(b.states[i] for i in v) for k, v in k_grading(b).items()}
        assert blocks == {-2: [(2, 0)], -1: [(1, 0)], 0: [(0, 0), (1, 1)],
                          1: [(0, 1)], 2: [(0, 2)]}

    def test_rho_z_preserves_k(self):
        b = build_basis(1, 8)
        cols = interior_indices(b, 2)
        kd = k_grading_diagonal(b)
        for a in range(2):
            for c in range(2):
                dev = commutator(rho_Z_op(a, c, P1, b), kd).deviation_on(cols)
                assert dev < 1e-10

    def test_ladder_shifts_k(self):
        b = build_basis(1, 6)
        blocks = k_grading(b)
        op = ladder_op(1, "+", b)
        for i in blocks[0]:
            col = op.mat[:, i].toarray().ravel()
            for j in np.nonzero(col)[0]:
                assert grading_value(b.states[j]) == 1
        op = ladder_op(0, "+", b)  # k -> k + 1 (lowers k_0)
        for i in blocks[0]:
            col = op.mat[:, i].toarray().ravel()
            for j in np.nonzero(col)[0]:
                assert grading_value(b.states[j]) == 1


class TestHermiteOracle:
    def test_matches_ladder_everywhere(self):
        b = build_basis(2, 12)
        for a in range(3):
            for sign in "+-":
                lop = ladder_op(a, sign, b)
                hop = hermite_oracle_op(a, sign, b)
                assert (lop - hop).max_abs() < 1e-12
                assert lop.radicands == hop.radicands

    def test_ground_state_raising(self):
        # the raising direction maps eta_0 to exactly 1 * eta_1
        b = build_basis(0, 4)
        op = hermite_oracle_op(0, "-", b)  # A-_0 raises on mode 0
        assert op.mat[b.state_index((1,)), b.state_index((0,))] == pytest.approx(1.0)

    def test_canonical_pair_on_interior(self):
        b = build_basis(1, 10)
        cols = interior_indices(b, 2)
        lower = hermite_oracle_op(1, "-", b)
        raise_ = hermite_oracle_op(1, "+", b)
        dev = (commutator(lower, raise_).mat.toarray()[:, cols]
               - np.eye(b.dim)[:, cols])
        assert np.max(np.abs(dev)) < 1e-12


class TestCommutatorSuite:
    @pytest.mark.parametrize("s", [1.0, 2.0, -1.5])
    def test_projective_factors(self, s):
        res = commutator_suite(1, 8, s=s)
        assert res["max_deviation"] < 1e-10

    def test_n2(self):
        assert commutator_suite(2, 8, s=2.0)["max_deviation"] < 1e-10


class TestGroupRep:
    def test_identity(self):
        b = build_basis(0, 10)
        U = rep_group_element(HeisenbergElement.identity(0), P1, b)
        assert np.allclose(U, np.eye(b.dim))

    def test_central_phase(self):
        b = build_basis(0, 10)
        U = rep_group_element(HeisenbergElement(np.zeros(2), 0.5), P1, b)
        assert np.allclose(U, np.exp(0.5j) * np.eye(b.dim))

    def test_unitary_on_interior(self):
        b = build_basis(0, 30)
        h = HeisenbergElement(np.array([0.6, -0.4]), 0.2)
        U = rep_group_element(h, P1, b)
        inner = [i for i, K in enumerate(b.states) if K[0] <= 8]
        norms = np.linalg.norm(U[:, inner], axis=0)
        assert np.max(np.abs(norms - 1.0)) < 1e-8

    def test_homomorphism_exact_section(self):
        b = build_basis(0, 36)
        rng = np.random.default_rng(5)
        inner = [i for i, K in enumerate(b.states) if K[0] <= 10]
        for _ in range(3):
            h1 = HeisenbergElement(rng.normal(size=2, scale=0.5), float(rng.normal()))
            h2 = HeisenbergElement(rng.normal(size=2, scale=0.5), float(rng.normal()))
            U = rep_group_element(h1, P1, b) @ rep_group_element(h2, P1, b)
            V = rep_group_element(h_compose(h1, h2), P1, b)
            assert np.max(np.abs((U - V)[np.ix_(inner, inner)])) < 1e-8

    def test_weyl_phase(self):
        b = build_basis(0, 40)
        h1 = HeisenbergElement(np.array([0.7, 0.0]), 0.0)
        h2 = HeisenbergElement(np.array([0.0, 0.8]), 0.0)
        U = rep_group_element(h1, P1, b) @ rep_group_element(h2, P1, b) \
            @ rep_group_element(h_inverse(h1), P1, b) \
            @ rep_group_element(h_inverse(h2), P1, b)
        phase = 2.0 * float(h1.w @ zeta_hat(0) @ h2.w)
        inner = [i for i, K in enumerate(b.states) if K[0] <= 12]
        dev = np.max(np.abs(U[np.ix_(inner, inner)]
                            - np.exp(1j * phase) * np.eye(len(inner))))
        assert dev < 1e-6

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            rep_group_element(HeisenbergElement.identity(1), P1, build_basis(0, 4))

    def test_truncation_dominated_reported(self):
        # a huge displacement on a tiny basis loses norm even on the interior
        b = build_basis(0, 6)
        h = HeisenbergElement(np.array([9.0, 0.0]), 0.0)
        with pytest.raises(ValueError, match="truncation-dominated"):
            rep_group_element(h, P1, b, norm_tol=1e-8)
        # a well-contained element passes the same gate
        b = build_basis(0, 30)
        h = HeisenbergElement(np.array([0.5, 0.0]), 0.0)
        rep_group_element(h, P1, b, norm_tol=1e-8, margin=20)
