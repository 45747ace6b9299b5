from fractions import Fraction

from pyns2.exactfield import Scalar
from pyns2.linalg import (
    EchelonBasis,
    add_scaled,
    determinant,
    is_positive_semidefinite,
    matrix_rank,
    nullspace,
    rank,
)
from pyns2.series import boson_factor, fermion_factor


def test_add_scaled_drops_zeros() -> None:
    v = {"a": Fraction(1), "b": Fraction(2)}
    add_scaled(v, {"a": Fraction(1, 2)}, -2)
    assert v == {"b": 2}


def test_nullspace() -> None:
    m = [[1, 2, 3], [2, 4, 6]]
    basis = nullspace(m)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    assert nullspace([], 2) == [[1, 0], [0, 1]]
    assert matrix_rank(m) == 1


def test_echelon_coordinates() -> None:
    e = EchelonBasis()
    assert e.add({"x": 1}) is None
    assert e.add({"x": 1, "y": 1}) is None
    assert e.add({"x": 2, "y": 3}) == {0: -1, 1: 3}
    assert e.contains({"y": 5})
    assert not e.contains({"z": 1})
    assert rank([{"x": 1}, {"x": 2}, {"y": Scalar.sqrt2()}]) == 2


def test_determinant() -> None:
    assert determinant([[2, 1], [1, 2]]) == 3
    assert determinant([[0, 1], [1, 0]]) == -1
    s2 = Scalar.sqrt2()
    assert determinant([[s2, 1], [1, s2]]) == 1


def test_psd() -> None:
    assert is_positive_semidefinite([[2, 1], [1, 2]])
    assert is_positive_semidefinite([[0, 0], [0, 1]])
    assert not is_positive_semidefinite([[0, 1], [1, 0]])
    assert not is_positive_semidefinite([[1, 2], [2, 1]])
    s2 = Scalar.sqrt2()
    assert is_positive_semidefinite([[s2, 1], [1, s2]])
    assert not is_positive_semidefinite([[1, s2], [s2, 1]])


def test_series_products() -> None:
    f = fermion_factor(Fraction(1, 2), 1, 2)
    b = boson_factor(1, 2)
    prod = f * b
    assert prod[0, 0] == 1
    assert prod[Fraction(1, 2), 1] == 1
    assert prod[2, 0] == 1
    assert prod[Fraction(3, 2), 1] == 1
    assert prod.level_total(1) == 1
