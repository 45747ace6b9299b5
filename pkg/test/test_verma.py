import random
from fractions import Fraction

import pytest

from pyns2.irreducible import IrreducibleModule
from pyns2.minimal import MinimalLabel
from pyns2.pbw import VermaModule, VermaParams, charges_at, levels_upto
from pyns2.series import verma_character
from pyns2.superalg import mode
from pyns2.verma import (
    character,
    contravariance_defect,
    gram,
    irreducible_dim,
    is_positive_semidefinite,
    positive_modes,
    primitive_vectors,
    singular_vectors,
    vacuum_params,
    verma_dim,
)

HALF = Fraction(1, 2)


@pytest.fixture
def notrandom() -> None:
    random.seed(0)


def test_level_half_gram(notrandom: None) -> None:
    for _ in range(20):
        h = Fraction(random.randint(-20, 20), random.randint(1, 9))
        q = Fraction(random.randint(-20, 20), random.randint(1, 9))
        p = VermaParams(Fraction(1), h, q)
        assert gram(p, HALF, 1).entries == [[2 * h - q]]
        assert gram(p, HALF, -1).entries == [[2 * h + q]]


def test_gram_symmetric() -> None:
    p = VermaParams(Fraction(3, 2), Fraction(1, 4), Fraction(1, 2))
    for level in levels_upto(2):
        for charge in charges_at(level):
            g = gram(p, level, charge)
            assert g.is_symmetric()
            assert g.size == verma_dim(p, level, charge)


def test_contravariance() -> None:
    module = VermaModule(VermaParams(Fraction(1), Fraction(1, 6), Fraction(1, 3)))
    letters = [mode(k, n) for k in ("L", "J") for n in (-1, 1, 2)]
    letters += [mode(k, r) for k in ("G+", "G-") for r in (-HALF, HALF, 3 * HALF)]
    for level in levels_upto(3 * HALF):
        for charge in charges_at(level):
            for u in module.basis(level, charge):
                for x in letters:
                    for lv in levels_upto(5 * HALF):
                        for ch in charges_at(lv):
                            for v in module.basis(lv, ch):
                                defect = contravariance_defect(module, x, u, v)
                                assert defect is None or defect == 0, f"{x} {u} {v}"


def test_singular_at_level_half() -> None:
    # 2h - q = 0 puts G+(-1/2)v in the radical
    p = VermaParams(Fraction(1), Fraction(1, 6), Fraction(1, 3))
    found = singular_vectors(p, HALF, 1)
    assert len(found) == 1
    assert found[0].grade == (HALF, 1)
    strict = primitive_vectors(p, HALF, 1)
    assert len(strict) == 1
    assert singular_vectors(p, HALF, -1) == []


def test_primitive_inside_radical() -> None:
    label = MinimalLabel.of(1, HALF, HALF)
    p = label.params
    for level in levels_upto(2):
        for charge in charges_at(level):
            radical = len(singular_vectors(p, level, charge))
            strict = primitive_vectors(p, level, charge)
            if level > 0:
                assert len(strict) <= radical
            for v in strict:
                for x in positive_modes(level):
                    assert not v.module.act_terms(x, v.terms)


def test_irreducible_dims() -> None:
    for label in (MinimalLabel.of(1, HALF, HALF), MinimalLabel.of(2, HALF, 3 * HALF), MinimalLabel.of(2, 3 * HALF, HALF)):
        p = label.params
        irr = IrreducibleModule(p.c, p.h, p.q)
        for level in levels_upto(2):
            for charge in charges_at(level):
                assert irr.dim(level, charge) == irreducible_dim(p, level, charge), f"{label} {level} {charge}"


def test_character_methods_agree() -> None:
    p = MinimalLabel.of(2, HALF, HALF).params
    assert character(p, 2) == character(p, 2, "gram")
    with pytest.raises(ValueError):
        character(p, 2, "guess")


def test_generic_character_is_verma() -> None:
    p = VermaParams(Fraction(7, 3), Fraction(2, 7), Fraction(1, 11))
    ch = character(p, 2, "gram")
    full = verma_character(2)
    assert ch.coeffs == full.coeffs


def test_vacuum_character() -> None:
    # the vacuum of c=1 (m=1) loses G+-(-1/2) and L(-1)
    ch = character(vacuum_params(Fraction(1)), 2)
    assert ch[0, 0] == 1
    assert ch[HALF, 1] == 0
    assert ch[1, 0] == 1
    assert ch[3 * HALF, 1] == 1


def test_unitary_gram_psd() -> None:
    label = MinimalLabel.of(2, HALF, 3 * HALF)
    for level in levels_upto(3 * HALF):
        for charge in charges_at(level):
            assert is_positive_semidefinite(gram(label.params, level, charge))
