from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Tuple

from .exactfield import Number, Rational, simplify
from .linalg import add_scaled

NS2 = "ns2"
VIRASORO = "virasoro"
HEISENBERG = "heisenberg"
AFFINE_SL2 = "affine-sl2"

KINDS = {
    NS2: ("L", "J", "G+", "G-", "C"),
    VIRASORO: ("L", "C"),
    HEISENBERG: ("a", "d"),
    AFFINE_SL2: ("E", "F", "H", "K"),
}
CENTRAL = {NS2: "C", VIRASORO: "C", HEISENBERG: "d", AFFINE_SL2: "K"}
ODD_KINDS = ("G+", "G-")

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ModeSymbol:
    algebra: str
    kind: str
    index: Optional[Fraction]

    def __str__(self) -> str:
        if self.index is None:
            return self.kind
        return f"{self.kind}[{self.index}]"

    def __repr__(self) -> str:
        return f"mode({str(self)!r})"

    @property
    def is_central(self) -> bool:
        return self.index is None


@lru_cache(maxsize=None)
def mode(kind: str, index: Optional[Rational] = None, algebra: str = NS2) -> ModeSymbol:
    if algebra not in KINDS:
        raise ValueError(f"unknown algebra {algebra!r}, expected one of {sorted(KINDS)}")
    if kind not in KINDS[algebra]:
        raise ValueError(f"unknown generator {kind!r} for {algebra}: {KINDS[algebra]}")
    if kind == CENTRAL[algebra]:
        if index is not None:
            raise ValueError(f"central element {kind} carries no index")
        return ModeSymbol(algebra, kind, None)
    if index is None:
        raise ValueError(f"generator {kind} needs a mode index")
    idx = Fraction(index)
    if kind in ODD_KINDS:
        if (idx - HALF).denominator != 1:
            raise ValueError(f"{kind} index must lie in Z+1/2, got {idx}")
    elif idx.denominator != 1:
        raise ValueError(f"{kind} index must be an integer, got {idx}")
    return ModeSymbol(algebra, kind, idx)


def central(algebra: str = NS2) -> ModeSymbol:
    return mode(CENTRAL[algebra], None, algebra)


_MODE_RE = re.compile(r"^\s*([A-Za-z][+-]?)\s*(?:\[\s*([-+]?\d+(?:/\d+)?)\s*\])?\s*$")


def mode_from_text(text: str, algebra: str = NS2) -> ModeSymbol:
    """Parse the rendering used by str(ModeSymbol), e.g. "G+[-3/2]"."""
    match = _MODE_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse mode {text!r}, expected e.g. 'G+[-3/2]'")
    kind, index = match.groups()
    return mode(kind, Fraction(index) if index is not None else None, algebra)


def parity(x: ModeSymbol) -> int:
    return 1 if x.kind in ODD_KINDS else 0


@lru_cache(maxsize=None)
def grading(x: ModeSymbol) -> Tuple[Fraction, int]:
    """
    (weight, charge) picked up by a state when x acts on it, i.e. the
    eigenvalues of ad L_0 and ad J_0 (ad H_0 for affine sl2).
    """
    if x.index is None:
        raise ValueError(f"central element {x} has no grading")
    charge = {"G+": 1, "G-": -1, "E": 2, "F": -2}.get(x.kind, 0)
    return -x.index, charge


# conformal weight of the generating state of each ns2 field
FIELD_WEIGHT = {"G+": Fraction(3, 2), "G-": Fraction(3, 2), "J": Fraction(1), "L": Fraction(2)}


def vertex_mode(kind: str, j: Rational) -> ModeSymbol:
    """u_(j) for the generating states: tau±_(j) = G±(j-1/2), mu_(j) = J(j), omega_(j) = L(j-1)."""
    if kind not in FIELD_WEIGHT:
        raise ValueError(f"no vertex operator for {kind!r}, expected one of {sorted(FIELD_WEIGHT)}")
    j = Fraction(j)
    if kind in ODD_KINDS:
        return mode(kind, j - HALF)
    if kind == "L":
        return mode("L", j - 1)
    return mode(kind, j)


def vertex_index(x: ModeSymbol) -> Fraction:
    """The j with vertex_mode(x.kind, j) == x."""
    if x.index is None or x.kind not in FIELD_WEIGHT:
        raise ValueError(f"{x} is not a mode of a generating field")
    if x.kind in ODD_KINDS:
        return x.index + HALF
    if x.kind == "L":
        return x.index + 1
    return x.index


def adjoint(x: ModeSymbol) -> ModeSymbol:
    """The anti-involution L_n -> L_-n, J_n -> J_-n, G±_r -> G∓_-r."""
    if x.index is None:
        return x
    if x.algebra != NS2 and x.algebra != VIRASORO:
        raise ValueError(f"no contravariant form on {x.algebra}")
    kind = {"G+": "G-", "G-": "G+"}.get(x.kind, x.kind)
    return mode(kind, -x.index, x.algebra)


class LinComb:
    """A finite linear combination of mode symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[ModeSymbol, Number]] = None):
        self.terms: Dict[ModeSymbol, Number] = {}
        if terms:
            add_scaled(self.terms, terms)

    def __iter__(self) -> Iterator[tuple[ModeSymbol, Number]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, x: ModeSymbol) -> Number:
        return self.terms.get(x, 0)

    def __add__(self, other: LinComb) -> LinComb:
        out = LinComb(self.terms)
        add_scaled(out.terms, other.terms)
        return out

    def __sub__(self, other: LinComb) -> LinComb:
        out = LinComb(self.terms)
        add_scaled(out.terms, other.terms, -1)
        return out

    def __mul__(self, scale: Number) -> LinComb:
        out = LinComb()
        add_scaled(out.terms, self.terms, scale)
        return out

    __rmul__ = __mul__

    def __neg__(self) -> LinComb:
        return self * -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinComb):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"LinComb({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{x}" for x, c in self.terms.items())


def _term(x: ModeSymbol, c: Number) -> Dict[ModeSymbol, Number]:
    c = simplify(c)
    return {x: c} if c else {}


def _ns2_bracket(x: ModeSymbol, y: ModeSymbol) -> Dict[ModeSymbol, Number]:
    a = x.algebra
    m, n = x.index, y.index
    assert m is not None and n is not None
    kx, ky = x.kind, y.kind
    s = m + n
    delta = s == 0
    out: Dict[ModeSymbol, Number] = {}
    if kx == "L" and ky == "L":
        add_scaled(out, _term(mode("L", s, a), m - n))
        if delta:
            add_scaled(out, _term(central(a), (m**3 - m) / 12))
    elif kx == "L" and ky == "J":
        add_scaled(out, _term(mode("J", s), -n))
    elif kx == "J" and ky == "L":
        add_scaled(out, _term(mode("J", s), m))
    elif kx == "L" and ky in ODD_KINDS:
        add_scaled(out, _term(mode(ky, s), m / 2 - n))
    elif kx in ODD_KINDS and ky == "L":
        add_scaled(out, _term(mode(kx, s), -(n / 2 - m)))
    elif kx == "J" and ky == "J":
        if delta:
            add_scaled(out, _term(central(), m / 3))
    elif kx == "J" and ky in ODD_KINDS:
        add_scaled(out, _term(mode(ky, s), 1 if ky == "G+" else -1))
    elif kx in ODD_KINDS and ky == "J":
        add_scaled(out, _term(mode(kx, s), -1 if kx == "G+" else 1))
    elif kx in ODD_KINDS and ky in ODD_KINDS and kx != ky:
        # {G+_r, G-_s} = 2L + (r - s)J + C/3 (r^2 - 1/4) δ, symmetric in the order
        r, t = (m, n) if kx == "G+" else (n, m)
        add_scaled(out, _term(mode("L", s), 2))
        add_scaled(out, _term(mode("J", s), r - t))
        if delta:
            add_scaled(out, _term(central(), (r * r - Fraction(1, 4)) / 3))
    return out


def _heisenberg_bracket(x: ModeSymbol, y: ModeSymbol) -> Dict[ModeSymbol, Number]:
    m, n = x.index, y.index
    assert m is not None and n is not None
    if m + n == 0:
        return _term(central(HEISENBERG), m)
    return {}


def _affine_bracket(x: ModeSymbol, y: ModeSymbol) -> Dict[ModeSymbol, Number]:
    p, q = x.index, y.index
    assert p is not None and q is not None
    s = p + q
    delta = s == 0
    kx, ky = x.kind, y.kind
    out: Dict[ModeSymbol, Number] = {}
    if kx == "E" and ky == "F":
        add_scaled(out, _term(mode("H", s, AFFINE_SL2), 1))
        if delta:
            add_scaled(out, _term(central(AFFINE_SL2), p))
    elif kx == "F" and ky == "E":
        add_scaled(out, _term(mode("H", s, AFFINE_SL2), -1))
        if delta:
            add_scaled(out, _term(central(AFFINE_SL2), q * -1))
    elif kx == "H" and ky in ("E", "F"):
        add_scaled(out, _term(mode(ky, s, AFFINE_SL2), 2 if ky == "E" else -2))
    elif kx in ("E", "F") and ky == "H":
        add_scaled(out, _term(mode(kx, s, AFFINE_SL2), -2 if kx == "E" else 2))
    elif kx == "H" and ky == "H":
        if delta:
            add_scaled(out, _term(central(AFFINE_SL2), 2 * p))
    return out


@lru_cache(maxsize=None)
def _bracket_cached(x: ModeSymbol, y: ModeSymbol) -> LinComb:
    if x.algebra != y.algebra:
        raise ValueError(f"cannot bracket {x} ({x.algebra}) with {y} ({y.algebra})")
    if x.is_central or y.is_central:
        return LinComb()
    if x.algebra in (NS2, VIRASORO):
        return LinComb(_ns2_bracket(x, y))
    if x.algebra == HEISENBERG:
        return LinComb(_heisenberg_bracket(x, y))
    return LinComb(_affine_bracket(x, y))


def bracket(x: ModeSymbol, y: ModeSymbol) -> LinComb:
    """The super-bracket xy - (-1)^{|x||y|} yx."""
    return _bracket_cached(x, y)


def bracket_with(x: ModeSymbol, lc: LinComb) -> LinComb:
    out = LinComb()
    for y, c in lc:
        add_scaled(out.terms, bracket(x, y).terms, c)
    return out


def bracket_lin(lc: LinComb, z: ModeSymbol) -> LinComb:
    out = LinComb()
    for y, c in lc:
        add_scaled(out.terms, bracket(y, z).terms, c)
    return out


def jacobi_sum(x: ModeSymbol, y: ModeSymbol, z: ModeSymbol) -> LinComb:
    """(-1)^{|x||z|}[x,[y,z]] + cyclic, which vanishes in a Lie superalgebra."""
    px, py, pz = parity(x), parity(y), parity(z)
    total = bracket_with(x, bracket(y, z)) * (-1) ** (px * pz)
    total = total + bracket_with(y, bracket(z, x)) * (-1) ** (py * px)
    total = total + bracket_with(z, bracket(x, y)) * (-1) ** (pz * py)
    return total


def generators(algebra: str, max_index: Rational) -> list[ModeSymbol]:
    """All non-central modes with |index| <= max_index, in table order."""
    bound = Fraction(max_index)
    out = []
    for kind in KINDS[algebra]:
        if kind == CENTRAL[algebra]:
            continue
        offset = HALF if kind in ODD_KINDS else Fraction(0)
        start = -bound
        # first admissible index at or above -bound
        k = (start - offset).__ceil__()
        idx = k + offset
        while idx <= bound:
            out.append(mode(kind, idx, algebra))
            idx += 1
    return out
