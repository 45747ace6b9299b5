"""
Irreducible highest-weight modules L(c,h,q) built grade by grade.

A vector of positive level lies in the maximal proper submodule exactly
when its images under G+(1/2), G-(1/2) and J(1) do, since those three modes
generate the positive part of ns(2). Each grade therefore gets a basis of
words y*b (y a creation mode, b a basis vector of a lower grade) whose
images under the three generators are independent, and every mode acts on
coordinates in these bases.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exactfield import Number, Rational, simplify
from .linalg import EchelonBasis, add_scaled
from .pbw import KIND_RANK, charges_at, order_key
from .superalg import HALF, ModeSymbol, bracket, grading, mode, parity

Grade = Tuple[Fraction, int]
Coords = Dict[int, Number]
# a basis element is a creation mode applied to a parent basis element
Word = Tuple[ModeSymbol, int]

GENERATORS = (mode("G+", HALF), mode("G-", HALF), mode("J", 1))


def shift(grade: Grade, x: ModeSymbol) -> Grade:
    w, ch = grading(x)
    return grade[0] + w, grade[1] + ch


def unshift(grade: Grade, x: ModeSymbol) -> Grade:
    w, ch = grading(x)
    return grade[0] - w, grade[1] - ch


def creation_modes(level: Fraction) -> List[ModeSymbol]:
    out = []
    for kind in KIND_RANK:
        idx = -HALF if kind in ("G+", "G-") else Fraction(-1)
        while -idx <= level:
            out.append(mode(kind, idx))
            idx -= 1
    out.sort(key=order_key)
    return out


class IrreducibleModule:
    def __init__(self, c: Number, h: Number = 0, q: Number = 0):
        self.c = c
        self.h = h
        self.q = q
        self._bases: Dict[Grade, List[Word]] = {}
        self._cache: Dict[Tuple[ModeSymbol, Grade, int], Coords] = {}

    def __repr__(self) -> str:
        return f"IrreducibleModule(c={self.c}, h={self.h}, q={self.q})"

    @staticmethod
    def grade(level: Rational, charge: int) -> Grade:
        return Fraction(level), charge

    def basis(self, grade: Grade) -> List[Word]:
        found = self._bases.get(grade)
        if found is None:
            found = self._build(grade)
            self._bases[grade] = found
        return found

    def dim(self, level: Rational, charge: int) -> int:
        g = self.grade(level, charge)
        if g == (0, 0):
            return 1
        return len(self.basis(g))

    def grade_dim(self, grade: Grade) -> int:
        return self.dim(*grade)

    def _build(self, grade: Grade) -> List[Word]:
        level, charge = grade
        if level <= 0 or charge not in charges_at(level):
            return []
        words: List[Word] = []
        echelon = EchelonBasis()
        for y in creation_modes(level):
            parent = unshift(grade, y)
            for pidx in range(self.grade_dim(parent)):
                coords = echelon.add(self._images(y, parent, pidx))
                if coords is None:
                    coords = {len(words): 1}
                    words.append((y, pidx))
                self._cache[y, parent, pidx] = coords
        return words

    def _images(self, y: ModeSymbol, parent: Grade, pidx: int) -> Dict[Tuple[int, int], Number]:
        """Coordinates of z*(y*b) for the generators z, keyed (generator, index)."""
        out: Dict[Tuple[int, int], Number] = {}
        for gi, z in enumerate(GENERATORS):
            image = self._product(z, y, parent, pidx)
            for k, c in image.items():
                out[gi, k] = c
        return out

    def _product(self, x: ModeSymbol, y: ModeSymbol, parent: Grade, pidx: int) -> Coords:
        """x*(y*b) = [x,y]*b + (-1)^{|x||y|} y*(x*b) for b = basis vector pidx of parent."""
        out: Coords = {}
        for w, c in bracket(x, y):
            add_scaled(out, self.act(w, parent, pidx), c)
        inner = self.act(x, parent, pidx)
        if inner:
            sign = -1 if parity(x) and parity(y) else 1
            add_scaled(out, self.act_coords(y, shift(parent, x), inner), sign)
        return out

    def act(self, x: ModeSymbol, grade: Grade, idx: int) -> Coords:
        key = (x, grade, idx)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        result = self._act(x, grade, idx)
        self._cache[key] = result
        return result

    def _act(self, x: ModeSymbol, grade: Grade, idx: int) -> Coords:
        if x.index is None:
            return {idx: self.c} if self.c else {}
        if x.index == 0:
            ev = simplify(self.h + grade[0] if x.kind == "L" else self.q + grade[1])
            return {idx: ev} if ev else {}
        target = shift(grade, x)
        if target[0] < 0:
            return {}
        if x.index < 0:
            # building the target grade records every creation-mode image
            self.basis(target)
            return self._cache.get((x, grade, idx), {})
        if grade == (0, 0):
            return {}
        y, pidx = self.basis(grade)[idx]
        return self._product(x, y, unshift(grade, y), pidx)

    def act_coords(self, x: ModeSymbol, grade: Grade, coords: Coords) -> Coords:
        out: Coords = {}
        for idx, c in coords.items():
            add_scaled(out, self.act(x, grade, idx), c)
        return out

    def apply(self, modes: Sequence[ModeSymbol], grade: Grade, coords: Coords) -> Tuple[Grade, Coords]:
        """modes[0] modes[1] ... modes[-1] applied to the vector at `grade`."""
        for x in reversed(modes):
            coords = self.act_coords(x, grade, coords)
            grade = shift(grade, x)
        return grade, coords

    def highest_weight(self) -> Tuple[Grade, Coords]:
        return (Fraction(0), 0), {0: 1}

    def word(self, modes: Sequence[ModeSymbol]) -> Tuple[Grade, Coords]:
        return self.apply(modes, *self.highest_weight())

    def letters(self, grade: Grade, idx: int) -> List[ModeSymbol]:
        """The creation modes whose product with the highest-weight vector gives basis vector idx."""
        out: List[ModeSymbol] = []
        while grade != (0, 0):
            y, idx = self.basis(grade)[idx]
            out.append(y)
            grade = unshift(grade, y)
        return out

    def render(self, grade: Grade, idx: int) -> str:
        letters = self.letters(grade, idx)
        return "*".join(str(x) for x in letters) if letters else "1"
