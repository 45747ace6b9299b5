import random
from fractions import Fraction

import pytest

from pyns2.exactfield import (
    Scalar,
    Sign,
    exact_div,
    from_json,
    normalize,
    parse_rational,
    real_sign,
    simplify,
    to_json,
)


@pytest.fixture
def notrandom() -> None:
    random.seed(0)


def test_generators() -> None:
    i = Scalar.i()
    s2 = Scalar.sqrt2()
    assert i * i == -1
    assert s2 * s2 == 2
    assert (i * s2) * (i * s2) == -2
    assert Scalar.r(1) * Scalar.r(1) == 3


def test_tower_collapse() -> None:
    # r = sqrt(m+2): m=2 gives 2, m=0 gives sqrt(2), m=6 gives 2 sqrt(2)
    assert Scalar.r(2) == 2
    assert Scalar.r(0) == Scalar.sqrt2()
    assert Scalar.r(6) == 2 * Scalar.sqrt2()
    assert Scalar.r(1).has_r


def test_simplify_drops_to_fraction() -> None:
    x = Scalar.sqrt2() * Scalar.sqrt2() / 4
    assert simplify(x) == Fraction(1, 2)
    assert isinstance(simplify(x), Fraction)
    assert isinstance(simplify(Scalar.i()), Scalar)


def test_inverse(notrandom: None) -> None:
    for _ in range(20):
        coords = [Fraction(random.randint(-5, 5), random.randint(1, 4)) for _ in range(8)]
        x = Scalar(coords, 1)
        if not x:
            continue
        assert x * x.inverse() == 1
        assert x / x == 1
    with pytest.raises(ZeroDivisionError):
        Scalar([0] * 8).inverse()


def test_mixed_towers() -> None:
    with pytest.raises(ValueError):
        Scalar.r(1) + Scalar.r(3)
    # scalars without r mix freely
    assert Scalar.i().m == 0
    assert (Scalar.r(1) + Scalar.i()).m == 1


def test_real_sign() -> None:
    s2 = Scalar.sqrt2()
    assert real_sign(1 - s2) is Sign.NEGATIVE
    assert real_sign(3 - 2 * s2) is Sign.POSITIVE
    assert real_sign(s2 - s2) is Sign.ZERO
    assert real_sign(Scalar.r(1) - 2) is Sign.NEGATIVE
    assert real_sign(Scalar.r(1) * s2 - 2) is Sign.POSITIVE
    assert real_sign(Fraction(-1, 3)) is Sign.NEGATIVE
    with pytest.raises(ValueError):
        real_sign(Scalar.i())


def test_json() -> None:
    x = Scalar.r(1) / 3 + Scalar.i()
    assert from_json(to_json(x)) == x
    assert to_json(Fraction(3, 2)) == "3/2"
    assert from_json("3/2") == Fraction(3, 2)


def test_parse_rational() -> None:
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational(" -4 ") == -4
    assert exact_div(1, 2) == Fraction(1, 2)
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("x")


def test_normalize_collapses_rational_roots() -> None:
    root = [0, 0, 0, 0, 1, 0, 0, 0]
    # m = 2: sqrt(4) = 2
    assert normalize(root, 2) == 2
    # m = 0: sqrt(2) already lives in the tower
    assert normalize(root, 0) == Scalar.sqrt2()
    assert normalize(root, 1) == Scalar.r(1)
    with pytest.raises(ValueError):
        normalize([1] * 7, 2)
    with pytest.raises(ValueError):
        normalize(root, -1)
