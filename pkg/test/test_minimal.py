from fractions import Fraction

import pytest

from pyns2.minimal import (
    STRICT,
    STANDARD,
    Chirality,
    MinimalLabel,
    charge_components,
    charge_mismatch,
    check_convention,
    check_unitarity,
    classify_chirality,
    fusion_table,
    fusion_upper_bound,
    leading_exponent,
    parse_label,
    parse_labels,
    spectrum,
)

HALF = Fraction(1, 2)


def test_spectrum_sizes() -> None:
    for m in (1, 2, 3):
        assert len(spectrum(m)) == (m + 1) * (m + 2) // 2
    assert len(spectrum(2, STRICT)) == 1
    assert spectrum(1, STRICT) == []
    with pytest.raises(ValueError):
        spectrum(0)
    with pytest.raises(ValueError):
        check_convention("loose")


def test_label_values() -> None:
    label = MinimalLabel.of(2, HALF, 3 * HALF)
    assert label.c == Fraction(3, 2)
    assert label.h == Fraction(1, 8)
    assert label.q == Fraction(-1, 4)
    vacuum = MinimalLabel.of(3, HALF, HALF)
    assert vacuum.h == 0 and vacuum.q == 0
    assert label.admissible() and not label.admissible(STRICT)
    with pytest.raises(ValueError):
        MinimalLabel.of(2, 1, HALF)
    with pytest.raises(ValueError):
        MinimalLabel.of(0, HALF, HALF)


def test_parse() -> None:
    assert parse_label("1/2,3/2", 2) == MinimalLabel.of(2, HALF, 3 * HALF)
    assert parse_label("(3/2, 1/2)", 2) == MinimalLabel.of(2, 3 * HALF, HALF)
    assert len(parse_labels("(1/2,3/2);(1/2,3/2);(1/2,1/2)", 2)) == 3
    with pytest.raises(ValueError):
        parse_label("1/2", 2)
    with pytest.raises(ValueError):
        parse_label("1/0,1/2", 2)


def test_chirality() -> None:
    for m in range(1, 7):
        for label in spectrum(m):
            chirality = classify_chirality(label)
            chiral = chirality in (Chirality.CHIRAL, Chirality.BOTH)
            anti = chirality in (Chirality.ANTI_CHIRAL, Chirality.BOTH)
            assert chiral == (label.k == HALF), f"{label}"
            assert anti == (label.j == HALF), f"{label}"
    assert classify_chirality(MinimalLabel.of(1, HALF, HALF)) is Chirality.BOTH


def test_fusion_examples() -> None:
    a = MinimalLabel.of(2, HALF, 3 * HALF)
    vac = MinimalLabel.of(2, HALF, HALF)
    assert charge_mismatch(a, a, vac) == HALF
    assert fusion_upper_bound(a, a, vac) == 0
    assert fusion_upper_bound(vac, a, a) == 1
    assert charge_components(vac, a, a) == ["w1"]
    assert leading_exponent(vac, a, a) == 0
    assert fusion_upper_bound(MinimalLabel.of(2, 3 * HALF, 3 * HALF), a, a) == 2
    with pytest.raises(ValueError):
        fusion_upper_bound(a, a, MinimalLabel.of(3, HALF, HALF))


def test_fusion_charge_conjugation() -> None:
    for m in range(1, 5):
        labels = spectrum(m)
        for l1 in labels:
            for l2 in labels:
                for l3 in labels:
                    swapped = [MinimalLabel.of(m, x.k, x.j) for x in (l1, l2, l3)]
                    assert fusion_upper_bound(*swapped) == fusion_upper_bound(l1, l2, l3), f"{l1} {l2} {l3}"


def test_fusion_table_bounds() -> None:
    for m in (2, 3):
        rows = fusion_table(m)
        assert len(rows) == len(spectrum(m)) ** 3
        labels = {str(label): label for label in spectrum(m)}
        for row in rows:
            l1, l2, l3 = (labels[text] for text in row["labels"])
            d = charge_mismatch(l1, l2, l3)
            bound = row["bound"]
            if d not in (-1, 0, 1):
                assert bound == 0
            elif d == 0:
                assert bound <= 2
            else:
                assert bound <= 1
            if classify_chirality(l1) is not Chirality.NEITHER:
                assert bound <= 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_unitarity_to_level_two(m: int) -> None:
    report = check_unitarity(m, 2)
    assert report.passed, report.to_json()
    assert report["labels"] == (m + 1) * (m + 2) // 2


def test_unitarity_small() -> None:
    report = check_unitarity(1, 1)
    assert report.passed
    assert report.checks["gram-psd"].checked > 0
    assert report["labels"] == 3
    assert check_unitarity(2, HALF, STANDARD).passed
