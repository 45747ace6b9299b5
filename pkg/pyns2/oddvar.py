"""
Vertex operators with odd formal variables on the vacuum module V(c).

Y(u, x) is rebuilt from the four generating fields by the iterate formula

    (a_(j) b)_(n) = sum_i (-1)^i C(j, i) [a_(j-i) b_(n+i) - (-1)^j (-1)^{|a||b|} b_(j+n-i) a_(i)]

applied to the leftmost letter of each PBW monomial. With
G1 = (G+ + G-)/sqrt(2) and G2 = (G+ - G-)/sqrt(-2) the odd-variable operator is

    Y(u, (x, phi1, phi2)) = Y(u, x) + phi1 Y(G1 u, x) + phi2 Y(G2 u, x) - phi1 phi2 Y(G1 G2 u, x)

where G_i u stands for G_i(-1/2) u.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactfield import Number, Rational, Scalar
from .linalg import add_scaled, combine, scaled
from .pbw import Monomial, Terms, VacuumModule, charges_at, levels_upto, monomial_grade
from .report import Report
from .superalg import FIELD_WEIGHT, HALF, ModeSymbol, bracket, mode, parity, vertex_index, vertex_mode

Phi = Tuple[int, ...]
PHI_MONOMIALS: Tuple[Phi, ...] = ((), (1,), (2,), (1, 2))

GENERATORS = {
    "tau+": (mode("G+", -Fraction(3, 2)),),
    "tau-": (mode("G-", -Fraction(3, 2)),),
    "mu": (mode("J", -1),),
    "omega": (mode("L", -2),),
}
# the letter creating each generating state from the vacuum
FIELD_OF = {"tau+": "G+", "tau-": "G-", "mu": "J", "omega": "L"}


def binomial(n: int, i: int) -> Fraction:
    """C(n, i) for any integer n and i >= 0."""
    out = Fraction(1)
    for k in range(i):
        out = out * (n - k) / (k + 1)
    return out


def _weight(terms: Mapping[Monomial, Number]) -> Fraction:
    weights = {monomial_grade(mono)[0] for mono in terms}
    if len(weights) > 1:
        raise ValueError(f"state mixes weights {sorted(weights)}")
    return weights.pop() if weights else Fraction(0)


def _parity(mono: Monomial) -> int:
    return monomial_grade(mono)[1] % 2


class Series:
    """
    A truncated Laurent series sum_e coeffs[e] x^e with vector coefficients,
    exact for every exponent e <= top.
    """

    def __init__(self, coeffs: Optional[Mapping[int, Terms]] = None, top: float = math.inf):
        self.top = top
        self.coeffs: Dict[int, Terms] = {}
        for e, v in (coeffs or {}).items():
            if v and e <= top:
                self.coeffs[e] = dict(v)

    def __getitem__(self, e: int) -> Terms:
        return self.coeffs.get(e, {})

    def _merge(self, other: Series, scale: Number) -> Series:
        out = Series(self.coeffs, min(self.top, other.top))
        for e, v in other.coeffs.items():
            if e > out.top:
                continue
            merged = add_scaled(out.coeffs.setdefault(e, {}), v, scale)
            if not merged:
                del out.coeffs[e]
        return out

    def __add__(self, other: Series) -> Series:
        return self._merge(other, 1)

    def __sub__(self, other: Series) -> Series:
        return self._merge(other, -1)

    def scale(self, c: Number) -> Series:
        return Series({e: scaled(v, c) for e, v in self.coeffs.items()}, self.top)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        top = min(self.top, other.top)
        mine = {e: v for e, v in self.coeffs.items() if e <= top}
        theirs = {e: v for e, v in other.coeffs.items() if e <= top}
        return mine == theirs

    def derivative(self) -> Series:
        return Series({e - 1: scaled(v, e) for e, v in self.coeffs.items()}, self.top - 1)

    def negate_x(self) -> Series:
        return Series({e: scaled(v, -1) if e % 2 else v for e, v in self.coeffs.items()}, self.top)

    def apply(self, op: Callable[[Terms], Terms]) -> Series:
        return Series({e: op(v) for e, v in self.coeffs.items()}, self.top)

    def translate(self, op: Callable[[Terms], Terms]) -> Series:
        """e^{x D} applied coefficientwise, D = op, up to the exact range."""
        out: Dict[int, Terms] = {}
        for e, v in self.coeffs.items():
            term = dict(v)
            j = 0
            while term and e + j <= self.top:
                add_scaled(out.setdefault(e + j, {}), term)
                j += 1
                term = scaled(op(term), Fraction(1, j))
        return Series({e: v for e, v in out.items() if v}, self.top)

    def exponents(self) -> List[int]:
        return sorted(e for e in self.coeffs if e <= self.top)


def phi_product(a: Phi, b: Phi) -> Optional[Tuple[int, Phi]]:
    """phi_a phi_b = sign * phi_c, or None when a variable repeats."""
    if set(a) & set(b):
        return None
    letters = list(a + b)
    sign = 1
    # bubble sort, one sign flip per transposition
    for i in range(len(letters)):
        for j in range(len(letters) - 1 - i):
            if letters[j] > letters[j + 1]:
                letters[j], letters[j + 1] = letters[j + 1], letters[j]
                sign = -sign
    return sign, tuple(letters)


class GrassmannPolynomial:
    """sum_S phi_S P_S over S in {(), (1,), (2,), (1, 2)} with Series coefficients P_S."""

    def __init__(self, slots: Optional[Mapping[Phi, Series]] = None):
        self.slots: Dict[Phi, Series] = {}
        for s, series in (slots or {}).items():
            if s not in PHI_MONOMIALS:
                raise ValueError(f"not a monomial in phi1, phi2: {s}")
            self.slots[s] = series

    def __getitem__(self, s: Phi) -> Series:
        return self.slots.get(s, Series())

    def _combine(self, other: GrassmannPolynomial, scale: Number) -> GrassmannPolynomial:
        out = dict(self.slots)
        for s, series in other.slots.items():
            out[s] = out[s]._merge(series, scale) if s in out else series.scale(scale)
        return GrassmannPolynomial(out)

    def __add__(self, other: GrassmannPolynomial) -> GrassmannPolynomial:
        return self._combine(other, 1)

    def __sub__(self, other: GrassmannPolynomial) -> GrassmannPolynomial:
        return self._combine(other, -1)

    def scale(self, c: Number) -> GrassmannPolynomial:
        return GrassmannPolynomial({s: p.scale(c) for s, p in self.slots.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassmannPolynomial):
            return NotImplemented
        return all(self[s] == other[s] for s in PHI_MONOMIALS)

    def mul_phi(self, i: int) -> GrassmannPolynomial:
        """phi_i * self."""
        out: Dict[Phi, Series] = {}
        for s, series in self.slots.items():
            product = phi_product((i,), s)
            if product is None:
                continue
            sign, target = product
            out[target] = series.scale(sign)
        return GrassmannPolynomial(out)

    def d_phi(self, i: int) -> GrassmannPolynomial:
        """Left derivative: phi_i is moved to the front, then dropped."""
        out: Dict[Phi, Series] = {}
        for s, series in self.slots.items():
            if i not in s:
                continue
            position = s.index(i)
            rest = s[:position] + s[position + 1 :]
            out[rest] = series.scale(-1 if position % 2 else 1)
        return GrassmannPolynomial(out)

    def d_x(self) -> GrassmannPolynomial:
        return GrassmannPolynomial({s: p.derivative() for s, p in self.slots.items()})

    def superderivative(self, i: int) -> GrassmannPolynomial:
        """(d/d phi_i + phi_i d/dx) self."""
        return self.d_phi(i) + self.d_x().mul_phi(i)

    def apply(self, op: Callable[[Terms], Terms], odd: bool) -> GrassmannPolynomial:
        """An operator acting on the coefficients; odd ones pass phi_S with sign (-1)^{|S|}."""
        return GrassmannPolynomial(
            {s: p.apply(op).scale(-1 if odd and len(s) % 2 else 1) for s, p in self.slots.items()}
        )

    def negate_variables(self) -> GrassmannPolynomial:
        """x -> -x, phi_i -> -phi_i."""
        return GrassmannPolynomial(
            {s: p.negate_x().scale(-1 if len(s) % 2 else 1) for s, p in self.slots.items()}
        )

    def translate(self, op: Callable[[Terms], Terms]) -> GrassmannPolynomial:
        return GrassmannPolynomial({s: p.translate(op) for s, p in self.slots.items()})

    def specialize(self) -> Series:
        """phi1 = phi2 = 0."""
        return self[()]


class VertexAlgebra:
    """V(c) with its vertex operators rebuilt from tau+, tau-, mu and omega."""

    def __init__(self, c: Number):
        self.c = c
        self.module = VacuumModule(c)
        self._cache: Dict[Tuple[Monomial, int, Monomial], Terms] = {}
        sqrt2_half = Scalar.sqrt2() / 2
        # G1 = (G+ + G-)/sqrt(2), G2 = -i (G+ - G-)/sqrt(2)
        self.g1 = ((mode("G+", -HALF), sqrt2_half), (mode("G-", -HALF), sqrt2_half))
        minus_i = -Scalar.i() * sqrt2_half
        self.g2 = ((mode("G+", -HALF), minus_i), (mode("G-", -HALF), -minus_i))

    def __repr__(self) -> str:
        return f"VertexAlgebra(c={self.c})"

    def vacuum(self) -> Terms:
        return {(): 1}

    def state(self, modes: Sequence[ModeSymbol]) -> Terms:
        return self.module.word(modes).terms

    def generator(self, name: str) -> Terms:
        return self.state(GENERATORS[name])

    def basis(self, max_weight: Rational) -> List[Terms]:
        out = []
        for level in levels_upto(max_weight):
            for ch in charges_at(level):
                out.extend({mono: 1} for mono in self.module.basis(level, ch))
        return out

    def act(self, x: ModeSymbol, v: Terms) -> Terms:
        return self.module.act_terms(x, v)

    def act_lin(self, op: Iterable[Tuple[ModeSymbol, Number]], v: Terms) -> Terms:
        out: Terms = {}
        for x, c in op:
            add_scaled(out, self.act(x, v), c)
        return out

    def g(self, i: int, v: Terms) -> Terms:
        return self.act_lin(self.g1 if i == 1 else self.g2, v)

    def l_minus_one(self, v: Terms) -> Terms:
        return self.act(mode("L", -1), v)

    # vertex operators

    def mode_on(self, u: Monomial, n: int, w: Monomial) -> Terms:
        """u_(n) w for PBW monomials u and w."""
        key = (u, n, w)
        cached = self._cache.get(key)
        if cached is None:
            cached = self._mode_on(u, n, w)
            self._cache[key] = cached
        return cached

    def _mode_on(self, u: Monomial, n: int, w: Monomial) -> Terms:
        if not u:
            return {w: 1} if n == -1 else {}
        wt_u = monomial_grade(u)[0]
        wt_w = monomial_grade(w)[0]
        if wt_u + wt_w - n - 1 < 0:
            return {}
        x, rest = u[0], u[1:]
        kind = x.kind
        j = int(vertex_index(x))
        if not rest and j == -1:
            return self.module.act(vertex_mode(kind, n), w)
        wt_a = FIELD_WEIGHT[kind]
        wt_b = monomial_grade(rest)[0]
        sign = -1 if parity(x) and _parity(rest) else 1
        out: Terms = {}
        # a_(j-i) b_(n+i) w: b_(n+i) w vanishes once n + i > wt_b + wt_w - 1
        first = math.floor(wt_b + wt_w - 1 - n)
        second = math.floor(wt_a + wt_w - 1)
        if j >= 0:
            first = min(first, j)
            second = min(second, j)
        for i in range(first + 1):
            inner = self.mode_on(rest, n + i, w)
            if inner:
                c = (-1) ** i * binomial(j, i)
                add_scaled(out, self.act(vertex_mode(kind, j - i), inner), c)
        for i in range(second + 1):
            inner = self.act(vertex_mode(kind, i), {w: 1})
            if inner:
                c = -((-1) ** i) * binomial(j, i) * (-1) ** (j % 2) * sign
                add_scaled(out, self.modes(rest, j + n - i, inner), c)
        return out

    def modes(self, u: Monomial, n: int, v: Mapping[Monomial, Number]) -> Terms:
        out: Terms = {}
        for w, c in v.items():
            add_scaled(out, self.mode_on(u, n, w), c)
        return out

    def y_mode(self, u: Mapping[Monomial, Number], n: int, v: Mapping[Monomial, Number]) -> Terms:
        """u_(n) v for states u and v."""
        out: Terms = {}
        for mono, c in u.items():
            add_scaled(out, self.modes(mono, n, v), c)
        return out


class ModeFamily:
    """n -> u_(n) on V(c) for one state u, exact below the weight cutoff."""

    def __init__(self, algebra: VertexAlgebra, u: Terms, cutoff: Rational):
        self.algebra = algebra
        self.u = u
        self.cutoff = Fraction(cutoff)
        self.weight = _weight(u)

    def __call__(self, n: int, v: Terms) -> Terms:
        return self.algebra.y_mode(self.u, n, v)

    def series(self, v: Terms) -> Series:
        """Y(u, x) v with every coefficient of weight <= cutoff."""
        if not self.u or not v:
            return Series()
        wt_v = _weight(v)
        top = math.floor(self.cutoff - self.weight - wt_v)
        low = -int(self.weight + wt_v) - 1
        # e = -n-1 and the coefficient u_(n) v has weight wt_u + wt_v + e
        coeffs = {e: self(-e - 1, v) for e in range(low, top + 1)}
        return Series(coeffs, top)


def reconstruct_vertex_operator(algebra: VertexAlgebra, u: Terms, cutoff: Rational) -> ModeFamily:
    weight = _weight(u)
    if weight > Fraction(cutoff):
        raise ValueError(f"state of weight {weight} lies beyond the cutoff {cutoff}")
    return ModeFamily(algebra, u, cutoff)


class OddVertexOperator:
    """The four ordinary families behind Y(u, (x, phi1, phi2))."""

    def __init__(self, algebra: VertexAlgebra, u: Terms, cutoff: Rational):
        self.algebra = algebra
        self.u = u
        g1u = algebra.g(1, u)
        g2u = algebra.g(2, u)
        g12u = algebra.g(1, g2u)
        # Y(G1G2u) enters with a minus sign
        self.states: Dict[Phi, Terms] = {(): u, (1,): g1u, (2,): g2u, (1, 2): scaled(g12u, -1)}
        self.families = {s: ModeFamily(algebra, state, cutoff) for s, state in self.states.items()}

    def apply(self, v: Terms) -> GrassmannPolynomial:
        return GrassmannPolynomial({s: fam.series(v) for s, fam in self.families.items()})


def assemble_odd(algebra: VertexAlgebra, u: Terms, cutoff: Rational) -> OddVertexOperator:
    weight = _weight(u)
    if weight > Fraction(cutoff) - HALF:
        raise ValueError(f"state of weight {weight} lies beyond the cutoff {cutoff} minus 1/2")
    return OddVertexOperator(algebra, u, cutoff)


def phi_pm_expansion(op: OddVertexOperator, v: Terms) -> Dict[str, Series]:
    """
    The same operator on the basis 1, phi+, phi-, phi+phi- with
    phi+ = (-phi1 + i phi2)/sqrt(2) and phi- = (phi1 + i phi2)/sqrt(2).
    """
    y = op.apply(v)
    i = Scalar.i()
    root = Scalar.sqrt2() / 2
    s1, s2 = y[(1,)], y[(2,)]
    return {
        "1": y[()],
        "phi+": (s1.scale(-1) - s2.scale(i)).scale(root),
        "phi-": (s1 - s2.scale(i)).scale(root),
        # phi1 phi2 = i phi+ phi-
        "phi+phi-": y[(1, 2)].scale(i),
    }


def _exp_odd(algebra: VertexAlgebra, p: GrassmannPolynomial) -> GrassmannPolynomial:
    """e^{phi1 G1 + phi2 G2} p = p + B p + B(B p)/2."""

    def b(q: GrassmannPolynomial) -> GrassmannPolynomial:
        out = GrassmannPolynomial()
        for i in (1, 2):
            out = out + q.apply(lambda v, i=i: algebra.g(i, v), odd=True).mul_phi(i)
        return out

    once = b(p)
    return p + once + b(once).scale(HALF)


def _record_slots(report: Report, name: str, lhs: GrassmannPolynomial, rhs: GrassmannPolynomial, what: str) -> None:
    for s in PHI_MONOMIALS:
        report.record(name, lhs[s] == rhs[s], f"{what} slot {s}")


def _label(u: Terms) -> str:
    return " + ".join(f"({c})*{''.join(str(x) for x in mono) or '1'}" for mono, c in u.items()) or "0"


def check_derivative_properties(
    algebra: VertexAlgebra, u: Terms, cutoff: Rational, report: Optional[Report] = None
) -> Report:
    """Y(G_i u, (x,phi)) = (d/dphi_i + phi_i d/dx) Y(u, (x,phi)) and Y(L(-1)u, (x,phi)) = d/dx Y(u, (x,phi))."""
    if report is None:
        report = Report(f"derivative properties c={algebra.c}")
    report.touch("G-derivative")
    report.touch("L(-1)-derivative")
    cutoff = Fraction(cutoff)
    weight = _weight(u)
    y_u = OddVertexOperator(algebra, u, cutoff)
    lifted = [
        ("G-derivative", i, OddVertexOperator(algebra, algebra.g(i, u), cutoff)) for i in (1, 2)
    ] + [("L(-1)-derivative", 0, OddVertexOperator(algebra, algebra.l_minus_one(u), cutoff))]
    for v in algebra.basis(cutoff - weight):
        base = y_u.apply(v)
        for name, i, op in lifted:
            expected = base.superderivative(i) if i else base.d_x()
            _record_slots(report, name, op.apply(v), expected, f"u={_label(u)} i={i} v={_label(v)}")
    return report


def check_skew_symmetry(
    algebra: VertexAlgebra, u: Terms, v: Terms, cutoff: Rational, report: Optional[Report] = None
) -> Report:
    """Y(u,(x,phi))v = (-1)^{|u||v|} e^{xL(-1) + phi1 G1 + phi2 G2} Y(v,(-x,-phi))u."""
    if report is None:
        report = Report(f"skew symmetry c={algebra.c}")
    report.touch("skew-symmetry")
    lhs = OddVertexOperator(algebra, u, cutoff).apply(v)
    swapped = OddVertexOperator(algebra, v, cutoff).apply(u).negate_variables()
    rhs = _exp_odd(algebra, swapped).translate(algebra.l_minus_one)
    pu = {_parity(mono) for mono in u} or {0}
    pv = {_parity(mono) for mono in v} or {0}
    if len(pu) > 1 or len(pv) > 1:
        raise ValueError("skew symmetry needs states of definite parity")
    if pu.pop() and pv.pop():
        rhs = rhs.scale(-1)
    _record_slots(report, "skew-symmetry", lhs, rhs, f"u={_label(u)} v={_label(v)}")
    return report


def check_vacuum_and_creation(
    algebra: VertexAlgebra, u: Terms, cutoff: Rational, report: Optional[Report] = None
) -> Report:
    """Y(1,(x,phi)) = 1 on every state, and Y(u,(x,phi))1 is regular with constant term u."""
    if report is None:
        report = Report(f"vacuum and creation c={algebra.c}")
    report.touch("vacuum")
    report.touch("creation")
    cutoff = Fraction(cutoff)
    y_vac = OddVertexOperator(algebra, algebra.vacuum(), cutoff)
    for v in algebra.basis(cutoff):
        expected = GrassmannPolynomial({(): Series({0: v})})
        _record_slots(report, "vacuum", y_vac.apply(v), expected, f"v={_label(v)}")
    created = OddVertexOperator(algebra, u, cutoff).apply(algebra.vacuum())
    for s in PHI_MONOMIALS:
        negative = [e for e in created[s].exponents() if e < 0]
        report.record("creation", not negative, f"u={_label(u)} slot {s}: powers {negative}")
    report.record("creation", created[()][0] == u, f"u={_label(u)}: constant term")
    return report


def check_generator_commutators(
    algebra: VertexAlgebra, max_index: int = 2, cutoff: Rational = 2, report: Optional[Report] = None
) -> Report:
    """
    [u_(p), v_(q)] = sum_i C(p, i) (u_(i) v)_(p+q-i) for u, v among the
    generating states, compared with the bracket table on all states up to the cutoff.
    """
    if report is None:
        report = Report(f"generator commutators c={algebra.c}")
    report.touch("commutator formula")
    report.touch("bracket table")
    names = sorted(GENERATORS)
    vectors = algebra.basis(cutoff)
    indices = range(-max_index, max_index + 1)
    for a in names:
        for b in names:
            ka, kb = FIELD_OF[a], FIELD_OF[b]
            u, v = algebra.generator(a), algebra.generator(b)
            sign = -1 if parity(vertex_mode(ka, 0)) and parity(vertex_mode(kb, 0)) else 1
            top = int(FIELD_WEIGHT[ka] + FIELD_WEIGHT[kb]) - 1
            products = {i: algebra.y_mode(u, i, v) for i in range(top + 1)}
            for p in indices:
                for q in indices:
                    x, y = vertex_mode(ka, p), vertex_mode(kb, q)
                    for w in vectors:
                        direct = combine(
                            (1, algebra.act(x, algebra.act(y, w))),
                            (-sign, algebra.act(y, algebra.act(x, w))),
                        )
                        formula: Terms = {}
                        for i, state in products.items():
                            if state:
                                add_scaled(formula, algebra.y_mode(state, p + q - i, w), binomial(p, i))
                        table = _bracket_on(algebra, x, y, w)
                        what = f"{a}_({p}) {b}_({q}) on {_label(w)}"
                        report.record("commutator formula", formula == direct, what)
                        report.record("bracket table", table == direct, what)
    return report


def _bracket_on(algebra: VertexAlgebra, x: ModeSymbol, y: ModeSymbol, w: Terms) -> Terms:
    out: Terms = {}
    for z, c in bracket(x, y):
        add_scaled(out, algebra.act(z, w), c)
    return out


def verify_odd_calculus(
    c: Number, cutoff: Rational = Fraction(7, 2), max_weight: Rational = 2, max_index: int = 2, verbose: bool = False
) -> Report:
    """Every identity above on all states of weight <= max_weight."""
    algebra = VertexAlgebra(c)
    report = Report(f"odd variables c={c}", verbose)
    cutoff = Fraction(cutoff)
    states = algebra.basis(max_weight)
    report["states"] = len(states)
    for u in states:
        check_vacuum_and_creation(algebra, u, cutoff, report)
        if _weight(u) + 1 <= cutoff:
            check_derivative_properties(algebra, u, cutoff, report)
        for v in states:
            check_skew_symmetry(algebra, u, v, cutoff, report)
    check_generator_commutators(algebra, max_index, max_weight, report)
    return report

