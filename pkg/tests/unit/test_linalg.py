"""
Unit tests for ExactMatrix and the exact linear algebra service.
"""
from fractions import Fraction

import pytest

from src.models.matrix import ExactMatrix, infer_ring
from src.models.polynomial import MultiPoly
from src.models.scalars import QSqrt2
from src.services import sampling
from src.services.forms_service import build_N
from src.services.linalg_service import (
    COFACTOR_MAX_DIM, bareiss_det, det, exact_sign, is_positive_definite, leading_minors, poly_det,
)
from src.utils.errors import AsymmetricMatrixError, EncodingError, NotSquareError

pytestmark = pytest.mark.unit

t = MultiPoly.variable(0, 1)


class TestExactMatrix:
    """Construction, ring inference and serialization."""

    def test_ring_inference(self):
        """int < rat < qsqrt2 < poly."""
        assert infer_ring([1, 2]) == "int"
        assert infer_ring([1, Fraction(1, 2)]) == "rat"
        assert infer_ring([1, QSqrt2(0, 1)]) == "qsqrt2"
        assert infer_ring([t, 1]) == "poly"

    def test_ragged_rows_rejected(self):
        """All rows must have the same length."""
        with pytest.raises(ValueError):
            ExactMatrix([[1, 2], [3]])

    def test_matmul_and_identity(self):
        """Multiplying by the identity changes nothing."""
        m = ExactMatrix([[1, 2], [3, 4]])
        assert m @ ExactMatrix.identity(2) == m
        assert (m @ m).to_rows() == [[7, 10], [15, 22]]

    def test_transpose_and_symmetry(self):
        """A matrix plus its transpose is symmetric."""
        m = ExactMatrix([[1, 2], [5, 4]])
        assert not m.is_symmetric()
        assert m.transpose().to_rows() == [[1, 5], [2, 4]]

    def test_dict_roundtrip_each_ring(self):
        """Every ring survives to_dict / from_dict."""
        for m in (
            ExactMatrix([[1, -2], [3, 4]]),
            ExactMatrix([[Fraction(1, 2), 0], [0, Fraction(-3, 7)]]),
            ExactMatrix([[QSqrt2(1, 1), 0], [0, QSqrt2(0, 2)]]),
            ExactMatrix([[t + 1, t ** 2], [1, t]]),
        ):
            again = ExactMatrix.from_dict(m.to_dict())
            assert again == m
            assert again.ring == m.ring

    def test_from_dict_shape_mismatch(self):
        """rows/cols must describe the entries."""
        data = {"rows": 2, "cols": 2, "ring": "int", "entries": [["1", "2"]]}
        with pytest.raises(ValueError):
            ExactMatrix.from_dict(data)

    def test_from_dict_unknown_ring(self):
        """Only the four exact rings are accepted."""
        with pytest.raises(ValueError):
            ExactMatrix.from_dict({"rows": 1, "cols": 1, "ring": "float", "entries": [["1"]]})

    @pytest.mark.parametrize("ring, entry", [
        ("int", "abc"),
        ("rat", {"num": "1", "den": "0"}),
        ("rat", "1/0"),
        ("qsqrt2", {"rat": {"num": "1", "den": "1"}}),
        ("qsqrt2", 5),
        ("poly", 5),
        ("poly", {"arity": 1, "terms": [{"exponents": [1]}]}),
    ])
    def test_from_dict_malformed_entries(self, ring, entry):
        """Malformed entries raise EncodingError, never a bare KeyError or TypeError."""
        with pytest.raises(EncodingError):
            ExactMatrix.from_dict({"rows": 1, "cols": 1, "ring": ring, "entries": [[entry]]})


class TestDeterminant:
    """Bareiss elimination and cofactor expansion against the Leibniz oracle."""

    def test_small_int(self):
        """det [[2,1],[1,3]] = 5."""
        assert det(ExactMatrix([[2, 1], [1, 3]])) == 5

    def test_pivot_swap(self):
        """A zero leading pivot forces a row swap and a sign change."""
        assert det(ExactMatrix([[0, 1], [1, 0]])) == -1
        assert det(ExactMatrix([[0, 2, 1], [1, 1, 1], [2, 0, 3]])) == -4

    def test_singular(self):
        """Linearly dependent rows give zero."""
        assert det(ExactMatrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])) == 0

    def test_random_int_against_leibniz(self, rng, det_oracle):
        """Bareiss equals the permutation expansion on random integer matrices."""
        for size in range(1, 6):
            for _ in range(5):
                m = sampling.random_int_matrix(rng, size)
                assert bareiss_det(m) == det_oracle(m.to_rows())

    def test_random_rat_against_leibniz(self, rng, det_oracle):
        """Same check over the rationals."""
        for size in range(1, 5):
            m = sampling.random_symmetric_rat_matrix(rng, size)
            assert det(m) == det_oracle(m.to_rows())

    def test_qsqrt2(self):
        """det [[sqrt2, 1], [1, sqrt2]] = 1."""
        root = QSqrt2(0, 1)
        assert det(ExactMatrix([[root, 1], [1, root]])) == 1

    def test_poly_small(self):
        """det [[t,1],[1,t]] = t^2 - 1."""
        assert poly_det(ExactMatrix([[t, 1], [1, t]])) == t ** 2 - 1

    def test_poly_large_uses_bareiss(self):
        """(t-1) I + J of size 9 has determinant (t-1)^8 (t+8)."""
        size = COFACTOR_MAX_DIM + 1
        m = ExactMatrix.from_function(size, lambda i, j: t if i == j else MultiPoly.one(1), ring="poly")
        assert poly_det(m) == (t - 1) ** (size - 1) * (t + size - 1)

    def test_poly_cofactor_matches_leibniz(self, det_oracle):
        """Cofactor expansion equals the permutation expansion on a 4x4 polynomial matrix."""
        rows = [[t ** ((i * j) % 3) + i - j for j in range(4)] for i in range(4)]
        assert poly_det(ExactMatrix(rows)) == det_oracle(rows)

    def test_int_matrix_promoted_for_poly_det(self):
        """poly_det accepts integer matrices and returns a constant polynomial."""
        assert poly_det(ExactMatrix([[2, 1], [1, 3]])) == 5

    def test_not_square(self):
        """Determinants need square matrices."""
        with pytest.raises(NotSquareError):
            det(ExactMatrix([[1, 2, 3], [4, 5, 6]]))


class TestSylvester:
    """Leading minors and positive definiteness."""

    def test_n02_minors(self):
        """N^(0,2) has leading minors 1, 2, 32."""
        assert leading_minors(build_N(0, 2)) == [1, 2, 32]

    def test_positive_definite_examples(self):
        """N^(0,2) is positive definite; [[1,2],[2,1]] is not."""
        assert is_positive_definite(build_N(0, 2))
        assert not is_positive_definite(ExactMatrix([[1, 2], [2, 1]]))

    def test_asymmetric_rejected(self):
        """Sylvester's criterion needs symmetry."""
        with pytest.raises(AsymmetricMatrixError):
            is_positive_definite(ExactMatrix([[1, 2], [0, 1]]))

    def test_poly_rejected(self):
        """Polynomial matrices have no order."""
        with pytest.raises(ValueError):
            is_positive_definite(ExactMatrix([[t]]))

    def test_against_pivots(self, rng, pivot_oracle):
        """The verdict agrees with symmetric Gaussian elimination pivots."""
        for _ in range(30):
            m = sampling.random_symmetric_rat_matrix(rng, rng.randint(1, 4))
            pivots = pivot_oracle(m.to_rows())
            expected = pivots is not None and all(p > 0 for p in pivots)
            assert is_positive_definite(m) == expected

    def test_exact_sign(self):
        """Signs of ints, fractions and Q[sqrt2] values."""
        assert exact_sign(-3) == -1
        assert exact_sign(Fraction(0)) == 0
        assert exact_sign(QSqrt2(-1, 1)) == 1
        with pytest.raises(TypeError):
            exact_sign(t)
