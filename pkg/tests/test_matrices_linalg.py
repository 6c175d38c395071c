"""Exchange matrices (finite and periodic banded) and exact linear algebra."""

from fractions import Fraction

from clusterflow import linalg
from clusterflow.matrices import (
    ExchangeMatrix,
    NAMED_MATRICES,
    PeriodicBandedMatrix,
    liouville_even_matrix,
    liouville_odd_matrix,
    lv_matrix,
    lv_periodic_matrix,
    matrix_from_json,
    named_matrix,
    somos4_matrix,
)


class TestNamedMatrices:
    def test_all_names_resolve(self):
        for name in NAMED_MATRICES:
            m = named_matrix(name, 3)
            assert isinstance(m, (ExchangeMatrix, PeriodicBandedMatrix))

    def test_json_roundtrip(self):
        B = somos4_matrix()
        back = matrix_from_json(B.to_json())
        assert back.to_dense() == B.to_dense()


class TestPeriodicBanded:
    def test_lv_window_entries_shift_invariant(self):
        W = lv_matrix().window(-9, 9)
        for i in range(-6, 4):
            for j in range(-6, 4):
                assert W.entry(i, j) == W.entry(i + 3, j + 3)

    def test_lv_band_structure(self):
        W = lv_matrix().window(-9, 9)
        for i in range(-6, 7):
            for j in range(-6, 7):
                if abs(i - j) > 3:
                    assert W.entry(i, j) == 0

    def test_window_is_skew(self):
        W = lv_matrix().window(-6, 6)
        assert linalg.is_skew(W.to_dense())

    def test_periodic_closure_is_skew(self):
        for m in (3, 4):
            assert linalg.is_skew(lv_periodic_matrix(m).to_dense())


class TestLiouvilleMatrices:
    def test_even_invertible_for_m_three(self):
        B = liouville_even_matrix(3)
        assert linalg.det(B.to_dense()) != 0

    def test_even_singular_for_m_two(self):
        B = liouville_even_matrix(2)
        assert linalg.det(B.to_dense()) == 0

    def test_odd_size(self):
        B = liouville_odd_matrix(2)
        assert B.n == 2 * 5  # doubled coordinates on a ring of five


class TestLinalg:
    def test_inverse_roundtrip(self):
        m = [[Fraction(v) for v in row] for row in [[2, 1, 0], [1, 3, 1], [0, 1, 2]]]
        inv = linalg.inverse(m)
        assert linalg.mat_eq(linalg.mat_mul(m, inv), linalg.identity(3))

    def test_nullspace_orthogonal_to_rows(self):
        m = [[Fraction(v) for v in row] for row in [[1, 2, 3], [2, 4, 6]]]
        basis = linalg.nullspace(m)
        assert len(basis) == 2
        for vec in basis:
            for row in m:
                assert sum(a * b for a, b in zip(row, vec)) == 0

    def test_rank(self):
        m = [[Fraction(v) for v in row] for row in [[1, 2], [2, 4]]]
        assert linalg.rank(m) == 1

    def test_singular_inverse_is_none(self):
        m = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
        assert linalg.inverse(m) is None
