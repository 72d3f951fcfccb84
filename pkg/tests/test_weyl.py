"""Projective Weyl system: exhaustive identity checks and transform oracles."""

import numpy as np
import pytest

from qha import (
    HilbertOp,
    PhaseSpace,
    fourier_weyl,
    fourier_weyl_inverse,
    identity_op,
    op_modulate,
    op_parity,
    op_translate,
    parity_op,
    random_op,
    rank_one,
    weyl,
    weyl_identity_residuals,
)
from qha.errors import PreconditionError


class TestPhaseSpace:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_defining_identities_exhaustive(self, n):
        res = weyl_identity_residuals(n)
        assert res["projective"] <= 1e-12
        assert res["parity"] <= 1e-12
        assert res["cocycle"] <= 1e-12
        assert res["parity_symmetric"] <= 1e-12
        assert res["pairing_perfect"] == 0.0

    def test_pairing_is_antisymmetric(self):
        ps = PhaseSpace(5)
        for x in [(1, 2), (3, 0), (4, 4)]:
            for y in [(0, 1), (2, 3)]:
                assert ps.pairing(x, y) == pytest.approx(np.conj(ps.pairing(y, x)))

    def test_haar_weight(self):
        assert PhaseSpace(6).as_group().haar_weight == pytest.approx(1 / 6)


class TestWeylOperators:
    def test_identity_at_origin(self):
        assert np.array_equal(weyl(PhaseSpace(4), (0, 0)).matrix, np.eye(4))

    def test_n2_matrices(self):
        ps = PhaseSpace(2)
        assert np.allclose(weyl(ps, (1, 0)).matrix, [[0, 1], [1, 0]])
        assert np.allclose(weyl(ps, (0, 1)).matrix, np.diag([1.0, -1.0]))

    def test_unitary(self):
        ps = PhaseSpace(5)
        u = weyl(ps, (2, 3)).matrix
        assert np.allclose(u @ u.conj().T, np.eye(5), atol=1e-13)

    def test_parity_involution_and_selfadjoint(self):
        r = parity_op(PhaseSpace(4)).matrix
        assert np.array_equal(r, r.conj().T)
        assert np.allclose(r @ r, np.eye(4))

    def test_parity_intertwines_exhaustive_n4(self):
        ps = PhaseSpace(4)
        r = parity_op(ps).matrix
        worst = max(
            np.abs(r @ weyl(ps, x).matrix @ r - weyl(ps, ps.neg(x)).matrix).max()
            for x in ps.points()
        )
        assert worst <= 1e-13


class TestOperatorActions:
    def test_translate_at_origin(self):
        a = random_op(4, np.random.default_rng(0))
        assert np.allclose(op_translate(a, (0, 0)).matrix, a.matrix)

    def test_translate_composition_n5(self):
        ps = PhaseSpace(5)
        a = random_op(5, np.random.default_rng(1))
        worst = 0.0
        for x in [(1, 2), (4, 0), (3, 3)]:
            for y in [(2, 2), (0, 1)]:
                lhs = op_translate(op_translate(a, y), x)
                rhs = op_translate(a, ps.add(x, y))
                worst = max(worst, np.abs(lhs.matrix - rhs.matrix).max())
        assert worst <= 1e-12

    def test_translate_preserves_norms(self):
        a = random_op(4, np.random.default_rng(2))
        b = op_translate(a, (1, 3))
        assert b.op_norm == pytest.approx(a.op_norm, rel=1e-12)
        assert b.trace_norm == pytest.approx(a.trace_norm, rel=1e-12)
        assert b.hs_norm == pytest.approx(a.hs_norm, rel=1e-12)

    def test_op_parity_involutive(self):
        a = random_op(6, np.random.default_rng(3))
        assert np.allclose(op_parity(op_parity(a)).matrix, a.matrix)

    def test_modulate_zero_is_identity_n5(self):
        b = random_op(5, np.random.default_rng(4))
        assert np.allclose(op_modulate(b, (0, 0)).matrix, b.matrix)

    def test_modulate_even_dimension_rejected(self):
        with pytest.raises(PreconditionError):
            op_modulate(random_op(4, np.random.default_rng(0)), (1, 1))


class TestFourierWeyl:
    def test_identity_transform(self):
        n = 4
        vals = fourier_weyl(identity_op(n)).values
        expected = np.zeros(n * n, dtype=complex)
        expected[0] = n
        assert np.allclose(vals, expected, atol=1e-13)

    def test_matches_trace_oracle(self):
        n = 5
        ps = PhaseSpace(n)
        a = random_op(n, np.random.default_rng(6))
        direct = np.array([np.trace(a.matrix @ weyl(ps, x).matrix) for x in ps.points()])
        assert np.abs(fourier_weyl(a).values - direct).max() < 1e-12

    def test_rank_one_inner_product_identity(self):
        n = 4
        ps = PhaseSpace(n)
        rng = np.random.default_rng(7)
        phi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        phi, psi = phi / np.linalg.norm(phi), psi / np.linalg.norm(psi)
        vals = fourier_weyl(rank_one(phi, psi)).values
        direct = np.array([np.vdot(psi, weyl(ps, x).matrix @ phi) for x in ps.points()])
        assert np.abs(vals - direct).max() < 1e-12

    def test_isometry_into_weighted_l2(self):
        n = 6
        rng = np.random.default_rng(8)
        for _ in range(50):
            a = random_op(n, rng)
            energy = (np.abs(fourier_weyl(a).values) ** 2).sum() / n
            assert energy == pytest.approx(a.hs_norm ** 2, rel=1e-10)

    def test_weyl_family_orthonormal(self):
        n = 4
        ps = PhaseSpace(n)
        mats = [weyl(ps, x).matrix / np.sqrt(n) for x in ps.points()]
        gram = np.array([[np.trace(u.conj().T @ v) for v in mats] for u in mats])
        assert np.abs(gram - np.eye(n * n)).max() < 1e-10

    def test_roundtrip_reconstruction(self):
        n = 5
        ps = PhaseSpace(n)
        a = random_op(n, np.random.default_rng(9))
        back = fourier_weyl_inverse(ps, fourier_weyl(a))
        assert np.abs(back.matrix - a.matrix).max() < 1e-10


class TestHilbertOp:
    def test_norms_consistent_with_svd(self):
        a = random_op(5, np.random.default_rng(10))
        sv = np.linalg.svd(a.matrix, compute_uv=False)
        assert a.op_norm == pytest.approx(sv[0], rel=1e-10)
        assert a.trace_norm == pytest.approx(sv.sum(), rel=1e-10)
        assert a.hs_norm == pytest.approx(np.sqrt((sv ** 2).sum()), rel=1e-10)

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            HilbertOp(np.zeros((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            HilbertOp(np.array([[np.nan, 0], [0, 1]]))

    def test_matrix_is_read_only(self):
        a = identity_op(3)
        with pytest.raises(ValueError):
            a.matrix[0, 0] = 5.0

    def test_csv_roundtrip(self, tmp_path):
        from qha.weyl import read_hilbert_op, write_hilbert_op

        a = random_op(4, np.random.default_rng(11))
        path = tmp_path / "op.csv"
        write_hilbert_op(a, path, comment="roundtrip")
        assert np.array_equal(read_hilbert_op(path).matrix, a.matrix)
