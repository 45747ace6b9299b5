from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Union

# coordinates are indexed by k = i_bit + 2 * sqrt2_bit + 4 * r_bit over
# {1, i, √2, i√2, r, ir, √2r, i√2r} with r * r = m + 2
BASIS_NAMES = ("1", "i", "s2", "i*s2", "r", "i*r", "s2*r", "i*s2*r")

Rational = Union[int, Fraction]
Number = Union[int, Fraction, "Scalar"]


class Sign(enum.Enum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __str__(self) -> str:
        return self.name.lower()


def _collapse(m: int) -> tuple[str, int]:
    """How r = √(m+2) folds into the {1, √2} sub-tower, if it does."""
    n = m + 2
    s = math.isqrt(n)
    if s * s == n:
        return "square", s
    if n % 2 == 0:
        s = math.isqrt(n // 2)
        if 2 * s * s == n:
            return "twice-square", s
    return "none", 0


def normalize(coords: Iterable[Rational], m: int) -> Scalar:
    if m < 0:
        raise ValueError(f"level m must be nonnegative, got {m}")
    out = [Fraction(c) for c in coords]
    if len(out) != 8:
        raise ValueError(f"expected 8 coordinates, got {len(out)}")
    kind, s = _collapse(m)
    if kind != "none":
        for k in range(4, 8):
            c = out[k]
            if not c:
                continue
            out[k] = Fraction(0)
            base = k & 3
            if kind == "square":
                out[base] += c * s
            else:
                # r = s√2, and √2 * √2 = 2
                out[base ^ 2] += c * s * (2 if base & 2 else 1)
    return Scalar(out, m)


def _basis_product(a: int, b: int, m: int) -> tuple[int, int]:
    factor = 1
    common = a & b
    if common & 1:
        factor = -factor
    if common & 2:
        factor *= 2
    if common & 4:
        factor *= m + 2
    return a ^ b, factor


def _sign_of(x: Rational) -> int:
    return (x > 0) - (x < 0)


def _sign_sqrt2(p: Fraction, q: Fraction) -> int:
    """Sign of p + q√2."""
    sp, sq = _sign_of(p), _sign_of(q)
    if sq == 0 or sp == sq:
        return sp
    if sp == 0:
        return sq
    return sp * _sign_of(p * p - 2 * q * q)


class Scalar:
    """An element of Q(i, √2, √(m+2)), kept in canonical form."""

    __slots__ = ("coords", "m", "__dict__")

    def __init__(self, coords: Iterable[Rational], m: int = 0):
        self.coords: tuple[Fraction, ...] = tuple(Fraction(c) for c in coords)
        self.m = m

    @classmethod
    def from_rational(cls, value: Rational, m: int = 0) -> Scalar:
        return cls([value, 0, 0, 0, 0, 0, 0, 0], m)

    @classmethod
    def basis(cls, k: int, m: int = 0) -> Scalar:
        coords = [0] * 8
        coords[k] = 1
        return normalize(coords, m)

    @classmethod
    def i(cls, m: int = 0) -> Scalar:
        return cls.basis(1, m)

    @classmethod
    def sqrt2(cls, m: int = 0) -> Scalar:
        return cls.basis(2, m)

    @classmethod
    def r(cls, m: int) -> Scalar:
        return cls.basis(4, m)

    @classmethod
    def coerce(cls, value: Number, m: int = 0) -> Scalar:
        if isinstance(value, Scalar):
            return value
        return cls.from_rational(value, m)

    @cached_property
    def has_r(self) -> bool:
        return any(self.coords[4:])

    @cached_property
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    @cached_property
    def is_real(self) -> bool:
        return not any(self.coords[k] for k in (1, 3, 5, 7))

    def rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def simplify(self) -> Number:
        """Drop to a Fraction when the value is rational."""
        return self.coords[0] if self.is_rational else self

    def _tower(self, other: Scalar) -> int:
        if self.m == other.m or not other.has_r:
            return self.m
        if not self.has_r:
            return other.m
        raise ValueError(f"scalars from towers m={self.m} and m={other.m}")

    def _lift(self, other: Any) -> Scalar | None:
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_rational(other, self.m)
        return None

    def __add__(self, other: Any) -> Scalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        m = self._tower(o)
        return Scalar([a + b for a, b in zip(self.coords, o.coords)], m)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar([-a for a in self.coords], self.m)

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other: Any) -> Scalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> Scalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> Scalar:
        if isinstance(other, (int, Fraction)):
            return Scalar([a * other for a in self.coords], self.m)
        if not isinstance(other, Scalar):
            return NotImplemented
        m = self._tower(other)
        out = [Fraction(0)] * 8
        for a, x in enumerate(self.coords):
            if not x:
                continue
            for b, y in enumerate(other.coords):
                if not y:
                    continue
                k, factor = _basis_product(a, b, m)
                out[k] += x * y * factor
        return normalize(out, m)

    __rmul__ = __mul__

    def conjugate(self, bit: int) -> Scalar:
        """The Galois automorphism negating the generator at `bit` (1: i, 2: √2, 4: r)."""
        return Scalar(
            [-c if k & bit else c for k, c in enumerate(self.coords)], self.m
        )

    def inverse(self) -> Scalar:
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        if self.is_rational:
            return Scalar.from_rational(1 / self.coords[0], self.m)
        # the norm down the tower: each step lands in the fixed field of one conjugation
        a_i = self.conjugate(1)
        b = self * a_i
        b_2 = b.conjugate(2)
        c = b * b_2
        c_r = c.conjugate(4)
        d = (c * c_r).rational()
        return a_i * b_2 * c_r * (1 / d)

    def __truediv__(self, other: Any) -> Scalar:
        if isinstance(other, (int, Fraction)):
            return Scalar([a / other for a in self.coords], self.m)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> Scalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> Scalar:
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar.from_rational(1, self.m)
        for _ in range(n):
            result = result * self
        return result

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coords[0] == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.has_r and other.has_r and self.m != other.m:
            return False
        return self.coords == other.coords

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.coords[0])
        if self.has_r:
            return hash((self.m, self.coords))
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r}, m={self.m})"

    def __str__(self) -> str:
        terms = []
        for name, c in zip(BASIS_NAMES, self.coords):
            if not c:
                continue
            terms.append(str(c) if name == "1" else f"{c}*{name}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> Any:
        if self.is_rational:
            return str(self.coords[0])
        return {"m": self.m, "coords": [str(c) for c in self.coords]}


def real_sign(s: Number) -> Sign:
    if not isinstance(s, Scalar):
        return Sign(_sign_of(s))
    if not s.is_real:
        raise ValueError(f"real_sign needs a real scalar, got {s}")
    c = s.coords
    sa = _sign_sqrt2(c[0], c[2])
    sb = _sign_sqrt2(c[4], c[6])
    if sb == 0:
        return Sign(sa)
    if sa == 0 or sa == sb:
        return Sign(sb)
    # A + B*r with opposite signs: compare A^2 with B^2 (m+2) inside Q(√2)
    n = s.m + 2
    a2_p = c[0] * c[0] + 2 * c[2] * c[2]
    a2_q = 2 * c[0] * c[2]
    b2_p = c[4] * c[4] + 2 * c[6] * c[6]
    b2_q = 2 * c[4] * c[6]
    return Sign(sa * _sign_sqrt2(a2_p - n * b2_p, a2_q - n * b2_q))


def is_zero(x: Number) -> bool:
    return not x


def exact_div(a: Number, b: Number) -> Number:
    """Division that never produces a float."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    if isinstance(b, int):
        b = Fraction(b)
    return a / b  # type: ignore[operator]


def simplify(x: Number) -> Number:
    return x.simplify() if isinstance(x, Scalar) else x


def to_json(x: Number) -> Any:
    if isinstance(x, Scalar):
        return x.to_json()
    return str(Fraction(x))


def from_json(value: Any) -> Number:
    if isinstance(value, str):
        return Fraction(value)
    return normalize([Fraction(c) for c in value["coords"]], int(value["m"]))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as ex:
        raise ValueError(f"not an exact rational: {text!r}") from ex
