"""
Unitary minimal models of the N=2 algebra: labels (j, k), the spectrum,
chirality and the fusion-dimension upper bounds.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from .exactfield import Rational, to_json
from .pbw import VermaModule, VermaParams, charges_at, levels_upto
from .report import Report
from .verma import gram, is_positive_semidefinite

HALF = Fraction(1, 2)

STANDARD = "standard"
STRICT = "strict"
CONVENTIONS = (STANDARD, STRICT)


class Chirality(enum.Enum):
    CHIRAL = "chiral"
    ANTI_CHIRAL = "anti-chiral"
    BOTH = "both"
    NEITHER = "neither"

    def __str__(self) -> str:
        return self.value


def _half_odd(x: Fraction) -> bool:
    return x > 0 and (x - HALF).denominator == 1


@dataclass(frozen=True, order=True)
class MinimalLabel:
    m: int
    j: Fraction
    k: Fraction

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if not _half_odd(self.j) or not _half_odd(self.k):
            raise ValueError(f"j, k must lie in {{1/2, 3/2, ...}}, got ({self.j},{self.k})")

    @classmethod
    def of(cls, m: int, j: Rational, k: Rational) -> MinimalLabel:
        return cls(m, Fraction(j), Fraction(k))

    @property
    def c(self) -> Fraction:
        return Fraction(3 * self.m, self.m + 2)

    @property
    def h(self) -> Fraction:
        return (self.j * self.k - Fraction(1, 4)) / (self.m + 2)

    @property
    def q(self) -> Fraction:
        return (self.j - self.k) / (self.m + 2)

    @property
    def params(self) -> VermaParams:
        return VermaParams(self.c, self.h, self.q)

    def admissible(self, convention: str = STANDARD) -> bool:
        bound = self.m + 2 if convention == STANDARD else self.m
        return self.j + self.k < bound

    def __str__(self) -> str:
        return f"({self.j},{self.k})"

    def to_json(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "j": str(self.j),
            "k": str(self.k),
            "h": to_json(self.h),
            "q": to_json(self.q),
            "c": to_json(self.c),
        }


_LABEL_RE = re.compile(r"^\s*\(?\s*([0-9/]+)\s*,\s*([0-9/]+)\s*\)?\s*$")


def parse_label(text: str, m: int) -> MinimalLabel:
    match = _LABEL_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse label {text!r}, expected j,k such as 1/2,3/2")
    try:
        j, k = (Fraction(g) for g in match.groups())
    except (ValueError, ZeroDivisionError) as ex:
        raise ValueError(f"cannot parse label {text!r}: {ex}") from ex
    return MinimalLabel(m, j, k)


def parse_labels(text: str, m: int) -> List[MinimalLabel]:
    return [parse_label(part, m) for part in text.split(";") if part.strip()]


def check_convention(convention: str) -> str:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}, expected one of {CONVENTIONS}")
    return convention


def spectrum(m: int, convention: str = STANDARD) -> List[MinimalLabel]:
    check_convention(convention)
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    bound = m + 2 if convention == STANDARD else m
    out = []
    j = HALF
    while j + HALF < bound:
        k = HALF
        while j + k < bound:
            out.append(MinimalLabel(m, j, k))
            k += 1
        j += 1
    return out


def classify_chirality(label: MinimalLabel) -> Chirality:
    """G+(-1/2)w = 0 iff its norm 2h - q vanishes, and G-(-1/2)w = 0 iff 2h + q does."""
    module = VermaModule(label.params)
    chiral = not gram(module, HALF, 1).entries[0][0]
    anti = not gram(module, HALF, -1).entries[0][0]
    if chiral and anti:
        return Chirality.BOTH
    if chiral:
        return Chirality.CHIRAL
    if anti:
        return Chirality.ANTI_CHIRAL
    return Chirality.NEITHER


def _same_m(*labels: MinimalLabel) -> int:
    ms = {label.m for label in labels}
    if len(ms) != 1:
        raise ValueError(f"labels from different models: m in {sorted(ms)}")
    return ms.pop()


def charge_mismatch(l1: MinimalLabel, l2: MinimalLabel, l3: MinimalLabel) -> Fraction:
    _same_m(l1, l2, l3)
    return l3.q - l1.q - l2.q


def fusion_upper_bound(l1: MinimalLabel, l2: MinimalLabel, l3: MinimalLabel) -> int:
    """
    0 unless q3 - q1 - q2 is -1, 0 or 1; at most 1 for the shifted charges and 2
    for matching charges, cut to 1 when the first module is chiral or anti-chiral.
    """
    d = charge_mismatch(l1, l2, l3)
    if d not in (-1, 0, 1):
        return 0
    bound = 2 if d == 0 else 1
    if classify_chirality(l1) is not Chirality.NEITHER:
        bound = min(bound, 1)
    return bound


# top components of an intertwining operator and the J(0)-charge each carries
COMPONENTS = (
    ("w1", 0),
    ("G+(-1/2)w1", 1),
    ("G-(-1/2)w1", -1),
    ("G+(-1/2)G-(-1/2)w1", 0),
)


def charge_components(l1: MinimalLabel, l2: MinimalLabel, l3: MinimalLabel) -> List[str]:
    """Components whose charge q1 + q2 + shift can meet q3 and that survive chirality of l1."""
    d = charge_mismatch(l1, l2, l3)
    chirality = classify_chirality(l1)
    chiral = chirality in (Chirality.CHIRAL, Chirality.BOTH)
    anti = chirality in (Chirality.ANTI_CHIRAL, Chirality.BOTH)
    out = []
    for name, offset in COMPONENTS:
        if d != offset:
            continue
        if name.startswith("G+(-1/2)w1") and chiral:
            continue
        if name.endswith("G-(-1/2)w1") and anti:
            continue
        out.append(name)
    return out


def leading_exponent(l1: MinimalLabel, l2: MinimalLabel, l3: MinimalLabel) -> Fraction:
    _same_m(l1, l2, l3)
    return l3.h - l1.h - l2.h


def fusion_table(m: int, convention: str = STANDARD) -> List[Dict[str, Any]]:
    labels = spectrum(m, convention)
    out = []
    for l1 in labels:
        for l2 in labels:
            for l3 in labels:
                out.append(
                    {
                        "labels": [str(l1), str(l2), str(l3)],
                        "bound": fusion_upper_bound(l1, l2, l3),
                        "delta": to_json(leading_exponent(l1, l2, l3)),
                    }
                )
    return out


def check_unitarity(
    m: int, max_level: Rational = 2, convention: str = STANDARD, verbose: bool = False
) -> Report:
    """Gram matrices of every label positive semidefinite on all grades up to max_level."""
    report = Report(f"unitarity m={m}", verbose)
    labels = spectrum(m, convention)
    report["labels"] = len(labels)
    report.touch("gram-psd")
    for label in labels:
        module = VermaModule(label.params)
        for level in levels_upto(max_level):
            for charge in charges_at(level):
                g = gram(module, level, charge)
                if not g.basis:
                    continue
                report.record(
                    "gram-psd",
                    is_positive_semidefinite(g),
                    f"{label} level {level} charge {charge}",
                )
    return report


def labels_json(labels: Sequence[MinimalLabel]) -> List[Dict[str, Any]]:
    return [label.to_json() for label in labels]
