from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from .exactfield import Number, Rational, simplify, to_json

Grade = Tuple[Fraction, int]


class CharacterSeries:
    """
    Truncated graded dimensions sum dim(n, k) q^(h+n) z^(q+k), stored by the
    relative grade (n, k) with n a half-integer at most `cutoff`.
    """

    def __init__(self, cutoff: Rational, h: Number = 0, q: Number = 0):
        self.cutoff = Fraction(cutoff)
        self.h = h
        self.q = q
        self.coeffs: Dict[Grade, int] = {}

    def __getitem__(self, grade: Tuple[Rational, int]) -> int:
        return self.coeffs.get((Fraction(grade[0]), grade[1]), 0)

    def __setitem__(self, grade: Tuple[Rational, int], dim: int) -> None:
        level = Fraction(grade[0])
        if level > self.cutoff:
            raise ValueError(f"weight {level} beyond truncation {self.cutoff}")
        if dim < 0:
            raise ValueError(f"negative dimension {dim} at {grade}")
        if dim:
            self.coeffs[level, grade[1]] = dim
        else:
            self.coeffs.pop((level, grade[1]), None)

    def __iter__(self) -> Iterator[Tuple[Grade, int]]:
        return iter(sorted(self.coeffs.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterSeries):
            return NotImplemented
        return (
            self.cutoff == other.cutoff
            and self.h == other.h
            and self.q == other.q
            and self.coeffs == other.coeffs
        )

    def _joint(self, other: CharacterSeries) -> Fraction:
        return min(self.cutoff, other.cutoff)

    def __add__(self, other: CharacterSeries) -> CharacterSeries:
        if self.h != other.h or self.q != other.q:
            raise ValueError("cannot add characters with different q^h z^q prefactors")
        out = CharacterSeries(self._joint(other), self.h, self.q)
        for grade, d in list(self.coeffs.items()) + list(other.coeffs.items()):
            if grade[0] <= out.cutoff:
                out.coeffs[grade] = out.coeffs.get(grade, 0) + d
        return out

    def __mul__(self, other: CharacterSeries) -> CharacterSeries:
        out = CharacterSeries(
            self._joint(other), simplify(self.h + other.h), simplify(self.q + other.q)
        )
        for (n1, k1), d1 in self.coeffs.items():
            for (n2, k2), d2 in other.coeffs.items():
                n = n1 + n2
                if n <= out.cutoff:
                    out.coeffs[n, k1 + k2] = out.coeffs.get((n, k1 + k2), 0) + d1 * d2
        return out

    def level_total(self, level: Rational) -> int:
        level = Fraction(level)
        return sum(d for (n, _), d in self.coeffs.items() if n == level)

    def levels(self) -> List[Fraction]:
        return sorted({n for n, _ in self.coeffs})

    def to_json(self) -> Dict[str, object]:
        return {
            "h": to_json(self.h),
            "q": to_json(self.q),
            "cutoff": str(self.cutoff),
            "coefficients": [
                {
                    "weight": to_json(simplify(self.h + n)),
                    "charge": to_json(simplify(self.q + k)),
                    "dim": d,
                }
                for (n, k), d in self
            ],
        }


def monomial_series(cutoff: Rational, terms: Dict[Grade, int]) -> CharacterSeries:
    out = CharacterSeries(cutoff)
    for grade, d in terms.items():
        if grade[0] <= out.cutoff:
            out[grade] = d
    return out


def fermion_factor(weight: Rational, charge: int, cutoff: Rational) -> CharacterSeries:
    """1 + z^charge q^weight."""
    return monomial_series(cutoff, {(Fraction(0), 0): 1, (Fraction(weight), charge): 1})


def boson_factor(weight: int, cutoff: Rational) -> CharacterSeries:
    """1/(1 - q^weight), expanded to the cutoff."""
    terms: Dict[Grade, int] = {}
    n = 0
    while n * weight <= cutoff:
        terms[Fraction(n * weight), 0] = 1
        n += 1
    return monomial_series(cutoff, terms)


def verma_character(cutoff: Rational) -> CharacterSeries:
    """prod_n (1 + z q^(n-1/2)) (1 + z^-1 q^(n-1/2)) / (1 - q^n)^2."""
    cutoff = Fraction(cutoff)
    out = monomial_series(cutoff, {(Fraction(0), 0): 1})
    n = 1
    while n - Fraction(1, 2) <= cutoff:
        half = n - Fraction(1, 2)
        out = out * fermion_factor(half, 1, cutoff) * fermion_factor(half, -1, cutoff)
        if n <= cutoff:
            out = out * boson_factor(n, cutoff) * boson_factor(n, cutoff)
        n += 1
    return out
