"""
The rank-one odd lattice vertex superalgebra V_L, <alpha, alpha> = -1, and the
Heisenberg (Liouville) modules M(1, s).

Oscillator content is a partition stored as a non-increasing tuple of
positive integers n, each standing for a factor alpha(-n) (resp. a(-n)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, List, Mapping, Tuple, TypeVar, Union

from .exactfield import Number, Rational, Scalar, simplify, to_json
from .linalg import add_scaled

Parts = Tuple[int, ...]

LATTICE_NORM = -1
HEIS_NORM = 1

V_L = "V_L"
LIOUVILLE = "Liouville"


@dataclass(frozen=True, order=True)
class LatticeState:
    oscillators: Parts
    sector: int

    @property
    def level(self) -> int:
        return sum(self.oscillators)

    @property
    def parity(self) -> int:
        return self.sector % 2

    def __str__(self) -> str:
        osc = "".join(f"a({-n})" for n in self.oscillators)
        return f"{osc}e^{self.sector}"

    def to_json(self) -> Dict[str, object]:
        return {"oscillators": [-n for n in self.oscillators], "sector": self.sector}


@dataclass(frozen=True)
class HeisState:
    oscillators: Parts
    s: Number

    @property
    def level(self) -> int:
        return sum(self.oscillators)

    parity = 0

    def __str__(self) -> str:
        osc = "".join(f"a({-n})" for n in self.oscillators)
        return f"{osc}|s={self.s}>"

    def to_json(self) -> Dict[str, object]:
        return {"oscillators": [-n for n in self.oscillators], "s": to_json(self.s)}


FockState = Union[LatticeState, HeisState]
S = TypeVar("S", LatticeState, HeisState)


def vacuum() -> LatticeState:
    return LatticeState((), 0)


def exponential(p: int) -> LatticeState:
    return LatticeState((), p)


def lattice_vector(*states: LatticeState) -> Dict[LatticeState, Number]:
    return {s: 1 for s in states}


def add_part(parts: Parts, n: int) -> Parts:
    return tuple(sorted(parts + (n,), reverse=True))


def remove_part(parts: Parts, n: int) -> Parts:
    i = parts.index(n)
    return parts[:i] + parts[i + 1 :]


@lru_cache(maxsize=None)
def partitions(n: int, largest: int = 0) -> Tuple[Parts, ...]:
    """Partitions of n as non-increasing tuples, parts at most `largest` (0: no bound)."""
    if n == 0:
        return ((),)
    top = n if largest <= 0 else min(n, largest)
    out: List[Parts] = []
    for first in range(top, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _multiplicities(parts: Parts) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for n in parts:
        out[n] = out.get(n, 0) + 1
    return out


def _zero_mode(state: FockState) -> Number:
    if isinstance(state, LatticeState):
        # <alpha, p alpha> = -p
        return LATTICE_NORM * state.sector
    return state.s


def _norm(state: FockState) -> int:
    return LATTICE_NORM if isinstance(state, LatticeState) else HEIS_NORM


def _replace(state: S, parts: Parts) -> S:
    if isinstance(state, LatticeState):
        return LatticeState(parts, state.sector)  # type: ignore[return-value]
    return HeisState(parts, state.s)  # type: ignore[return-value]


def oscillator_on_state(n: int, state: S) -> Dict[S, Number]:
    """alpha(n) (or a(n)) on one basis state, with [b(m), b(n)] = norm * m * delta."""
    if n == 0:
        z = simplify(_zero_mode(state))
        return {state: z} if z else {}
    if n < 0:
        return {_replace(state, add_part(state.oscillators, -n)): 1}
    count = state.oscillators.count(n)
    if not count:
        return {}
    return {_replace(state, remove_part(state.oscillators, n)): count * n * _norm(state)}


def oscillator(n: int, vec: Mapping[S, Number]) -> Dict[S, Number]:
    out: Dict[S, Number] = {}
    for state, c in vec.items():
        add_scaled(out, oscillator_on_state(n, state), c)
    return out


def cocycle(q: int, p: int) -> int:
    """epsilon(q alpha, p alpha) = (-1)^{qp}, bimultiplicative and symmetric."""
    return -1 if (q * p) % 2 else 1


def max_exponential_index(q: int, state: LatticeState) -> int:
    """Largest t with (e^{q alpha})_t state possibly nonzero."""
    return q * state.sector + state.level - 1


def _annihilate(parts: Parts, mu: Parts, q: int) -> Tuple[Number, Parts]:
    """Coefficient of x^-d in E^+ = exp(-sum q alpha(n) x^-n / n), partition mu of d, on parts."""
    have = _multiplicities(parts)
    coeff: Number = Fraction(1)
    remaining = list(parts)
    for n, k in _multiplicities(mu).items():
        c = have.get(n, 0)
        if k > c:
            return 0, ()
        # (-q/n)^k / k! times alpha(n)^k alpha(-n)^c = c!/(c-k)! (n * norm)^k alpha(-n)^(c-k)
        coeff *= Fraction(-q, n) ** k * comb(c, k) * (n * LATTICE_NORM) ** k
        for _ in range(k):
            remaining.remove(n)
    return coeff, tuple(remaining)


def _create(nu: Parts, q: int) -> Number:
    """Coefficient of the monomial prod alpha(-n) in exp(sum q alpha(-n) x^n / n)."""
    coeff: Number = Fraction(1)
    for n, k in _multiplicities(nu).items():
        coeff *= Fraction(q, n) ** k / factorial(k)
    return coeff


@lru_cache(maxsize=None)
def exponential_mode_on_state(q: int, t: Rational, state: LatticeState) -> Dict[LatticeState, Number]:
    """Coefficient of x^{-t-1} in Y(e^{q alpha}, x) on one basis state. The result is shared, do not mutate it."""
    t = Fraction(t)
    if t.denominator != 1:
        raise ValueError(
            f"mode index {t} of e^({q}alpha) on sector {state.sector} is not allowed: "
            f"indices are integers, nonzero only for t <= {max_exponential_index(q, state)}"
        )
    exponent = -int(t) - 1
    # x^{-q p'} x^{d_minus} x^{-d_plus}
    base = -q * state.sector
    out: Dict[LatticeState, Number] = {}
    sign = cocycle(q, state.sector)
    for d_plus in range(state.level + 1):
        d_minus = exponent - base + d_plus
        if d_minus < 0:
            continue
        for mu in partitions(d_plus):
            a, rest = _annihilate(state.oscillators, mu, q)
            if not a:
                continue
            for nu in partitions(d_minus):
                b = _create(nu, q)
                parts = tuple(sorted(rest + nu, reverse=True))
                add_scaled(out, {LatticeState(parts, state.sector + q): a * b}, sign)
    return out


def exponential_mode(q: int, t: Rational, vec: Mapping[LatticeState, Number]) -> Dict[LatticeState, Number]:
    out: Dict[LatticeState, Number] = {}
    for state, c in vec.items():
        add_scaled(out, exponential_mode_on_state(q, t, state), c)
    return out


@dataclass(frozen=True)
class AlphaMode:
    n: int

    def __str__(self) -> str:
        return f"alpha({self.n})"


@dataclass(frozen=True)
class ExponentialMode:
    q: int
    t: Fraction

    def __str__(self) -> str:
        return f"(e^{self.q}alpha)_{self.t}"


LatticeOp = Union[AlphaMode, ExponentialMode]


def apply_lattice_mode(op: LatticeOp, vec: Mapping[LatticeState, Number]) -> Dict[LatticeState, Number]:
    if isinstance(op, AlphaMode):
        return oscillator(op.n, vec)
    return exponential_mode(op.q, op.t, vec)


def _quadratic(n: int, vec: Mapping[S, Number]) -> Dict[S, Number]:
    """sum_k :b(k) b(n-k): with annihilators to the right."""
    out: Dict[S, Number] = {}
    for state, c in vec.items():
        top = max(state.oscillators, default=0)
        single = {state: c}
        for k in range(n - top, 0):
            add_scaled(out, oscillator(k, oscillator(n - k, single)))
        for k in range(0, top + 1):
            add_scaled(out, oscillator(n - k, oscillator(k, single)))
    return out


def virasoro_coefficients(which: str) -> Tuple[Number, Number]:
    """(quadratic, linear) in L(n) = A sum :b b:(n) + B (-n-1) b(n)."""
    if which == V_L:
        # -alpha(-1)^2/2 + alpha(-2)/2
        return Fraction(-1, 2), Fraction(1, 2)
    if which == LIOUVILLE:
        # a(-1)^2/2 + i a(-2)/2
        return Fraction(1, 2), Scalar.i() / 2
    raise ValueError(f"unknown Virasoro element {which!r}, expected {V_L!r} or {LIOUVILLE!r}")


def modified_virasoro_modes(which: str, n: int, vec: Mapping[S, Number]) -> Dict[S, Number]:
    quad, lin = virasoro_coefficients(which)
    out: Dict[S, Number] = {}
    add_scaled(out, _quadratic(n, vec), quad)
    add_scaled(out, oscillator(n, vec), lin * (-n - 1))
    return out


def _eigenvalue(image: Mapping[S, Number], vec: Mapping[S, Number], what: str) -> Number:
    if not vec:
        raise ValueError("grade of the zero vector is undefined")
    key = next(iter(vec))
    ratio = simplify(image.get(key, 0) / vec[key])  # type: ignore[operator]
    scaled = {s: simplify(ratio * c) for s, c in vec.items()}
    scaled = {s: c for s, c in scaled.items() if c}
    if scaled != {s: c for s, c in image.items() if c}:
        raise ValueError(f"state is not homogeneous for {what}")
    return ratio


def grade_of(vec: Mapping[S, Number]) -> Tuple[Number, Number, int]:
    """(weight, charge, parity) from the modified Virasoro zero mode and the zero mode b(0)."""
    states = list(vec)
    if not states:
        raise ValueError("grade of the zero vector is undefined")
    which = V_L if isinstance(states[0], LatticeState) else LIOUVILLE
    weight = _eigenvalue(modified_virasoro_modes(which, 0, vec), vec, "L(0)")
    charge = _eigenvalue(oscillator(0, vec), vec, "the zero mode")
    parities = {s.parity for s in states}
    if len(parities) != 1:
        raise ValueError("state mixes even and odd sectors")
    return weight, charge, parities.pop()


@lru_cache(maxsize=None)
def sector_weight(p: int) -> Number:
    """L(0)-eigenvalue of e^{p alpha}, taken from the engine."""
    return grade_of({exponential(p): 1})[0]


def lattice_basis(max_sector: int, max_weight: Rational, min_weight: Rational = 0) -> List[LatticeState]:
    """Basis states with |sector| <= max_sector and weight in [min_weight, max_weight]."""
    out = []
    for p in range(-max_sector, max_sector + 1):
        base = sector_weight(p)
        level = 0
        while base + level <= max_weight:
            if base + level >= min_weight:
                out.extend(LatticeState(mu, p) for mu in partitions(level))
            level += 1
    return out


def heis_basis(s: Number, max_level: int) -> List[HeisState]:
    return [HeisState(mu, s) for level in range(max_level + 1) for mu in partitions(level)]


def commutator(
    left: Callable[[Dict[S, Number]], Dict[S, Number]],
    right: Callable[[Dict[S, Number]], Dict[S, Number]],
    vec: Dict[S, Number],
    sign: int = 1,
) -> Dict[S, Number]:
    """left right v - sign * right left v."""
    out: Dict[S, Number] = {}
    add_scaled(out, left(right(vec)))
    add_scaled(out, right(left(vec)), -sign)
    return out
