from fractions import Fraction
from itertools import product

import pytest

from pyns2.superalg import (
    AFFINE_SL2,
    HEISENBERG,
    NS2,
    LinComb,
    adjoint,
    bracket,
    central,
    generators,
    jacobi_sum,
    mode,
    mode_from_text,
    parity,
    vertex_index,
    vertex_mode,
)

HALF = Fraction(1, 2)


def test_virasoro_table() -> None:
    assert bracket(mode("L", 1), mode("L", -1)) == LinComb({mode("L", 0): 2})
    assert bracket(mode("L", 2), mode("L", -2)) == LinComb({mode("L", 0): 4, central(): HALF})
    assert bracket(mode("L", -1), mode("G+", -HALF)) == 0
    assert bracket(mode("L", 1), mode("J", -1)) == LinComb({mode("J", 0): 1})
    assert bracket(mode("J", 1), mode("J", -1)) == LinComb({central(): Fraction(1, 3)})


def test_odd_table() -> None:
    gp, gm = mode("G+", HALF), mode("G-", -HALF)
    assert bracket(gp, gm) == LinComb({mode("L", 0): 2, mode("J", 0): 1})
    # {G+_3/2, G-_-3/2} = 2L0 + 3J0 + C/3 (9/4 - 1/4)
    assert bracket(mode("G+", 3 * HALF), mode("G-", -3 * HALF)) == LinComb(
        {mode("L", 0): 2, mode("J", 0): 3, central(): Fraction(2, 3)}
    )
    assert bracket(mode("G+", HALF), mode("G+", -HALF)) == 0
    assert bracket(mode("J", 0), mode("G-", -HALF)) == LinComb({mode("G-", -HALF): -1})


def test_skew_symmetry() -> None:
    gens = generators(NS2, 3)
    for x, y in product(gens, gens):
        sign = -1 if parity(x) and parity(y) else 1
        assert bracket(x, y) == bracket(y, x) * -sign, f"{x} {y}"


def test_jacobi() -> None:
    gens = generators(NS2, 3)
    for x, y, z in product(gens, gens, gens):
        assert not jacobi_sum(x, y, z), f"{x} {y} {z}"


def test_other_algebras() -> None:
    a = lambda n: mode("a", n, HEISENBERG)  # noqa: E731
    assert bracket(a(2), a(-2)) == LinComb({central(HEISENBERG): 2})
    e, f = mode("E", 1, AFFINE_SL2), mode("F", -1, AFFINE_SL2)
    assert bracket(e, f) == LinComb({mode("H", 0, AFFINE_SL2): 1, central(AFFINE_SL2): 1})
    with pytest.raises(ValueError):
        bracket(mode("L", 0), mode("E", 0, AFFINE_SL2))


def test_mode_validation() -> None:
    with pytest.raises(ValueError):
        mode("G+", 0)
    with pytest.raises(ValueError):
        mode("L", HALF)
    with pytest.raises(ValueError):
        mode("C", 1)
    with pytest.raises(ValueError):
        mode("X", 1)


def test_mode_text() -> None:
    assert mode_from_text("G+[-3/2]") == mode("G+", Fraction(-3, 2))
    assert mode_from_text("C") == central()
    x = mode("J", -4)
    assert mode_from_text(str(x)) == x
    with pytest.raises(ValueError):
        mode_from_text("G+(-3/2)")


def test_adjoint() -> None:
    assert adjoint(mode("L", 2)) == mode("L", -2)
    assert adjoint(mode("G+", HALF)) == mode("G-", -HALF)
    assert adjoint(adjoint(mode("G-", -5 * HALF))) == mode("G-", -5 * HALF)


def test_vertex_modes() -> None:
    assert vertex_mode("G+", -1) == mode("G+", -3 * HALF)
    assert vertex_mode("L", -1) == mode("L", -2)
    assert vertex_mode("J", 2) == mode("J", 2)
    for x in (mode("G-", HALF), mode("L", -3), mode("J", 0)):
        assert vertex_mode(x.kind, vertex_index(x)) == x
    with pytest.raises(ValueError):
        vertex_mode("E", 0)
    with pytest.raises(ValueError):
        vertex_index(central())
