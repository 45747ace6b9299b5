"""
PBW monomials and the normal-ordering action of ns(2) on Verma modules
M(c,h,q) and on the vacuum algebra V(c) = M(c,0,0)/<G±(-1/2)1>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exactfield import Number, Rational, simplify, to_json
from .linalg import add_scaled, scaled
from .superalg import HALF, LinComb, ModeSymbol, adjoint, bracket, grading, mode, parity

Monomial = Tuple[ModeSymbol, ...]
Terms = Dict[Monomial, Number]

KIND_RANK = {"J": 0, "L": 1, "G+": 2, "G-": 3}


@lru_cache(maxsize=None)
def order_key(x: ModeSymbol) -> Tuple[int, Fraction]:
    assert x.index is not None
    return KIND_RANK[x.kind], x.index


@lru_cache(maxsize=None)
def monomial_grade(mono: Monomial) -> Tuple[Fraction, int]:
    level = Fraction(0)
    charge = 0
    for x in mono:
        w, ch = grading(x)
        level += w
        charge += ch
    return level, charge


def render_monomial(mono: Monomial) -> str:
    return "*".join(str(x) for x in mono) if mono else "1"


def is_canonical(mono: Monomial) -> bool:
    for x in mono:
        if x.index is None or x.index >= 0:
            return False
    for a, b in zip(mono, mono[1:]):
        ka, kb = order_key(a), order_key(b)
        if ka > kb or (ka == kb and parity(a)):
            return False
    return True


@dataclass(frozen=True)
class VermaParams:
    c: Number
    h: Number = 0
    q: Number = 0

    def to_json(self) -> Dict[str, object]:
        return {"c": to_json(self.c), "h": to_json(self.h), "q": to_json(self.q)}


def max_charge(level: Rational) -> int:
    """Largest |charge| a PBW monomial of this level can carry: weight >= charge^2/2."""
    return math.isqrt(int(2 * Fraction(level)))


def charges_at(level: Rational) -> List[int]:
    """Charges compatible with a level: 2*level and the charge share a parity."""
    two = Fraction(level) * 2
    if two.denominator != 1:
        return []
    bound = max_charge(level)
    return [ch for ch in range(-bound, bound + 1) if (ch - int(two)) % 2 == 0]


def levels_upto(cutoff: Rational) -> List[Fraction]:
    steps = int(Fraction(cutoff) * 2)
    return [Fraction(k, 2) for k in range(steps + 1)]


class VermaModule:
    """M(c,h,q); negative modes create, positive and zero modes are moved right."""

    kind = "verma"

    def __init__(self, params: VermaParams):
        self.params = params
        self.c = params.c
        self.h = params.h
        self.q = params.q
        self._cache: Dict[Tuple[ModeSymbol, Monomial], Terms] = {}
        self._basis: Dict[Tuple[Fraction, int], List[Monomial]] = {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}(c={self.c}, h={self.h}, q={self.q})"

    def is_annihilator(self, x: ModeSymbol) -> bool:
        assert x.index is not None
        return x.index > 0

    def creation_modes(self, level: Rational) -> List[ModeSymbol]:
        """Basis modes of weight at most `level`, in canonical order."""
        bound = Fraction(level)
        out = []
        for kind in KIND_RANK:
            idx = -HALF if kind in ("G+", "G-") else Fraction(-1)
            while -idx <= bound:
                x = mode(kind, idx)
                if not self.is_annihilator(x):
                    out.append(x)
                idx -= 1
        out.sort(key=order_key)
        return out

    def basis(self, level: Rational, charge: int) -> List[Monomial]:
        key = (Fraction(level), charge)
        cached = self._basis.get(key)
        if cached is not None:
            return cached
        level = Fraction(level)
        modes = self.creation_modes(level)
        found: List[Monomial] = []

        def extend(start: int, prefix: Monomial, remaining: Fraction, ch: int) -> None:
            if remaining == 0:
                if ch == charge:
                    found.append(prefix)
                return
            for i in range(start, len(modes)):
                x = modes[i]
                w, dc = grading(x)
                if w > remaining:
                    continue
                extend(i + parity(x), prefix + (x,), remaining - w, ch + dc)

        if level >= 0:
            extend(0, (), level, 0)
        found.sort(key=lambda mono: (len(mono), [order_key(x) for x in mono]))
        self._basis[key] = found
        return found

    def act(self, x: ModeSymbol, mono: Monomial) -> Terms:
        key = (x, mono)
        cached = self._cache.get(key)
        if cached is None:
            cached = self._act(x, mono)
            self._cache[key] = cached
        return cached

    def _act_lin(self, lc: LinComb, mono: Monomial, out: Terms, scale: Number = 1) -> None:
        for z, c in lc:
            add_scaled(out, self.act(z, mono), c * scale)

    def _act(self, x: ModeSymbol, mono: Monomial) -> Terms:
        if x.index is None:
            return {mono: self.c} if self.c else {}
        if x.index == 0:
            level, charge = monomial_grade(mono)
            ev = simplify(self.h + level if x.kind == "L" else self.q + charge)
            return {mono: ev} if ev else {}
        out: Terms = {}
        if self.is_annihilator(x):
            if not mono:
                return out
            y, rest = mono[0], mono[1:]
            # x y rest = [x,y] rest + (-1)^{|x||y|} y (x rest)
            self._act_lin(bracket(x, y), rest, out)
            sign = -1 if parity(x) and parity(y) else 1
            for m2, c in self.act(x, rest).items():
                add_scaled(out, self.act(y, m2), sign * c)
            return out
        if not mono or order_key(x) < order_key(mono[0]):
            return {(x,) + mono: 1}
        y, rest = mono[0], mono[1:]
        if x == y:
            return {} if parity(x) else {(x,) + mono: 1}
        sign = -1 if parity(x) and parity(y) else 1
        for m2, c in self.act(x, rest).items():
            add_scaled(out, self.act(y, m2), sign * c)
        self._act_lin(bracket(x, y), rest, out)
        return out

    def act_terms(self, x: ModeSymbol, terms: Mapping[Monomial, Number]) -> Terms:
        out: Terms = {}
        for mono, c in terms.items():
            add_scaled(out, self.act(x, mono), c)
        return out

    def highest_weight(self) -> StateVector:
        return StateVector(self, {(): 1})

    def word(self, modes: Sequence[ModeSymbol]) -> StateVector:
        """modes[0] modes[1] ... modes[-1] applied to the highest-weight vector."""
        terms: Terms = {(): 1}
        for x in reversed(modes):
            terms = self.act_terms(x, terms)
        return StateVector(self, terms)

    def vector(self, mono: Monomial, coeff: Number = 1) -> StateVector:
        return StateVector(self, {mono: coeff} if coeff else {})

    def pairing_monomial(self, mono: Monomial, terms: Mapping[Monomial, Number]) -> Number:
        """<mono 1, v>, by applying adjoints of the letters of mono left to right."""
        current: Terms = dict(terms)
        for y in mono:
            current = self.act_terms(adjoint(y), current)
            if not current:
                return 0
        return current.get((), 0)

    def pairing(self, u: StateVector, v: StateVector) -> Number:
        total: Number = 0
        for mono, c in u.terms.items():
            total = total + c * self.pairing_monomial(mono, v.terms)
        return simplify(total)


class VacuumModule(VermaModule):
    """
    V(c): the vacuum Verma module modulo the submodule generated by
    G±(-1/2)1. The modes L(-1), G±(-1/2) span a subalgebra that kills the
    vacuum, so they are moved right like annihilators and never appear in
    basis monomials.
    """

    kind = "vacuum"

    def __init__(self, c: Number):
        super().__init__(VermaParams(c, 0, 0))

    def is_annihilator(self, x: ModeSymbol) -> bool:
        assert x.index is not None
        if x.index > 0:
            return True
        return (x.kind == "L" and x.index == -1) or (
            x.kind in ("G+", "G-") and x.index == -HALF
        )


class StateVector:
    """A finite combination of PBW monomials in one module."""

    __slots__ = ("module", "terms")

    def __init__(self, module: VermaModule, terms: Optional[Mapping[Monomial, Number]] = None):
        self.module = module
        self.terms: Terms = {}
        if terms:
            add_scaled(self.terms, terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Number]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: StateVector) -> StateVector:
        out = StateVector(self.module, self.terms)
        add_scaled(out.terms, other.terms)
        return out

    def __sub__(self, other: StateVector) -> StateVector:
        out = StateVector(self.module, self.terms)
        add_scaled(out.terms, other.terms, -1)
        return out

    def __mul__(self, scale: Number) -> StateVector:
        return StateVector(self.module, scaled(self.terms, scale))

    __rmul__ = __mul__

    def __neg__(self) -> StateVector:
        return self * -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, StateVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    @property
    def grade(self) -> Optional[Tuple[Fraction, int]]:
        grades = {monomial_grade(mono) for mono in self.terms}
        if len(grades) > 1:
            raise ValueError(f"inhomogeneous state with grades {sorted(grades)}")
        return grades.pop() if grades else None

    @property
    def weight(self) -> Fraction:
        g = self.grade
        return Fraction(0) if g is None else g[0]

    @property
    def parity(self) -> int:
        g = self.grade
        return 0 if g is None else g[1] % 2

    def __repr__(self) -> str:
        return f"StateVector({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{render_monomial(mono)}" for mono, c in self.terms.items())

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {"monomial": render_monomial(mono), "coeff": to_json(c)}
            for mono, c in self.terms.items()
        ]


def enumerate_basis(p: VermaParams, level: Rational, charge: int) -> List[Monomial]:
    return VermaModule(p).basis(level, charge)


def apply_mode(x: ModeSymbol, v: StateVector) -> StateVector:
    return StateVector(v.module, v.module.act_terms(x, v.terms))


def apply_modes(modes: Iterable[ModeSymbol], v: StateVector) -> StateVector:
    """Apply modes right to left, as in the product modes[0] modes[1] ... v."""
    for x in reversed(list(modes)):
        v = apply_mode(x, v)
    return v
