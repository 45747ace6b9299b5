"""
Level-m affine sl2 and a commuting Heisenberg field inside
L_ns2(c_m, h, q) (x) V_L.

Tensor basis vectors are keys ((n2_grade, n2_index), LatticeState): the
left factor is a basis vector of the irreducible N=2 module, the right an
oscillator state of the lattice superalgebra. Vectors are dicts over those
keys. Grades are (T', p, ch) with p the lattice sector, ch the N=2 charge
offset and T' the affine weight, the eigenvalue of L_total(0) + H(0)/4,
which every n-th affine or Heisenberg mode lowers by n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .exactfield import Number, Rational, Scalar, simplify, to_json
from .irreducible import Coords, Grade, IrreducibleModule, shift
from .lattice import (
    V_L,
    LatticeState,
    exponential,
    exponential_mode_on_state,
    modified_virasoro_modes,
    oscillator_on_state,
    partitions,
    sector_weight,
    vacuum,
)
from .linalg import EchelonBasis, add_scaled, combine, difference, nullspace, scaled
from .minimal import HALF, MinimalLabel
from .pbw import charges_at
from .report import Report
from .superalg import FIELD_WEIGHT, ModeSymbol, mode, vertex_mode

TensorKey = Tuple[Tuple[Grade, int], LatticeState]
TensorState = Dict[TensorKey, Number]
CosetGrade = Tuple[Fraction, int, int]
Matrix = List[List[Number]]

CURRENTS = ("E", "F", "H", "R")
# rho = R / sqrt(k); these four have rational matrices
RATIONAL_CURRENTS = ("E", "F", "H", "rho")
OPERATORS = RATIONAL_CURRENTS + ("L", "L_rho", "L_sl2")
# (sector shift, charge shift) of each operator
SHIFTS = {"E": (-1, 1), "F": (1, -1)} | {name: (0, 0) for name in ("H", "R", "rho", "L", "L_rho", "L_sl2")}

DEFAULT_WINDOW = 2
DEFAULT_MAX_INDEX = 2


@dataclass(frozen=True)
class Field:
    """u (x) v with u in {1, tau+, tau-, mu, omega} and v in {1, alpha(-1)e^0, e^{q alpha}}."""

    left: str
    right: str
    q: int = 0

    @property
    def right_parity(self) -> int:
        return self.q % 2 if self.right == "exp" else 0

    def __str__(self) -> str:
        right = {"1": "1", "alpha": "alpha(-1)", "exp": f"e^{self.q}"}[self.right]
        return f"{self.left}(x){right}"


def _right_max(f: Field, state: LatticeState) -> int:
    """Largest s with v_(s) state possibly nonzero."""
    if f.right == "1":
        return -1
    if f.right == "alpha":
        return state.level
    return f.q * state.sector + state.level - 1


def _right_action(f: Field, s: int, state: LatticeState) -> Dict[LatticeState, Number]:
    if f.right == "1":
        return {state: 1} if s == -1 else {}
    if f.right == "alpha":
        return oscillator_on_state(s, state)
    return exponential_mode_on_state(f.q, s, state)


def tensor_product(left: Tuple[Grade, Coords], right: Dict[LatticeState, Number], scale: Number = 1) -> TensorState:
    grade, coords = left
    out: TensorState = {}
    for idx, a in coords.items():
        add_scaled(out, {((grade, idx), state): a * b for state, b in right.items()}, scale)
    return out


class CosetModel:
    def __init__(self, m: int, label: Optional[MinimalLabel] = None):
        if label is None:
            label = MinimalLabel.of(m, HALF, HALF)
        if label.m != m:
            raise ValueError(f"label {label} belongs to m={label.m}, not m={m}")
        self.m = m
        self.label = label
        self.h = label.h
        self.q = label.q
        self.module = IrreducibleModule(label.c, label.h, label.q)
        self.k = Fraction(m + 2, 2)
        self.sqrt_k = simplify(Scalar.r(m) * Scalar.sqrt2(m) / 2)
        self._bases: Dict[CosetGrade, List[TensorKey]] = {}
        self._index: Dict[CosetGrade, Dict[TensorKey, int]] = {}
        self._images: Dict[Tuple[str, Rational, TensorKey], TensorState] = {}

    def __repr__(self) -> str:
        return f"CosetModel(m={self.m}, label={self.label})"

    @property
    def is_vacuum(self) -> bool:
        return self.h == 0 and self.q == 0

    # grading

    def h0(self, p: int, ch: int) -> Fraction:
        return self.m * p + (self.m + 2) * (self.q + ch)

    def r0(self, p: int, ch: int) -> Number:
        return simplify(self.sqrt_k * (self.q + ch + p))

    def base(self, p: int, ch: int) -> Fraction:
        return self.h + Fraction(sector_weight(p)) + self.h0(p, ch) / 4

    def min_tprime(self, p: int, ch: int) -> Fraction:
        return self.base(p, ch) + Fraction(ch * ch, 2)

    def grade_of_key(self, key: TensorKey) -> CosetGrade:
        ((level, ch), _), state = key
        return self.base(state.sector, ch) + level + state.level, state.sector, ch

    def grade_of(self, vec: TensorState) -> CosetGrade:
        grades = {self.grade_of_key(key) for key in vec}
        if len(grades) != 1:
            raise ValueError(f"vector is not homogeneous: grades {sorted(grades)}")
        return grades.pop()

    def parity(self, key: TensorKey) -> int:
        ((_, ch), _), state = key
        return (ch + state.sector) % 2

    def rho_weight(self, p: int, ch: int) -> Fraction:
        """L_rho(0) on a vector annihilated by R(n), n > 0."""
        x = self.q + ch + p
        return -self.k * x * x / 2 + self.k * x / 2

    # bases

    def basis(self, grade: CosetGrade) -> List[TensorKey]:
        found = self._bases.get(grade)
        if found is None:
            found = self._build(grade)
            self._bases[grade] = found
            self._index[grade] = {key: i for i, key in enumerate(found)}
        return found

    def index(self, grade: CosetGrade) -> Dict[TensorKey, int]:
        self.basis(grade)
        return self._index[grade]

    def _build(self, grade: CosetGrade) -> List[TensorKey]:
        tprime, p, ch = grade
        total = Fraction(tprime) - self.base(p, ch)
        if total < 0 or (total - Fraction(ch, 2)).denominator != 1:
            return []
        out: List[TensorKey] = []
        for osc in range(math.floor(total) + 1):
            level = total - osc
            if ch not in charges_at(level):
                continue
            n2_grade = (level, ch)
            for idx in range(self.module.dim(level, ch)):
                out.extend(((n2_grade, idx), LatticeState(mu, p)) for mu in partitions(osc))
        return out

    def _charges(self, p: int, cutoff: Fraction) -> List[int]:
        vertex = -Fraction(self.m + 2, 4)
        out = []
        for step in (1, -1):
            ch = 0 if step == 1 else -1
            while True:
                if self.min_tprime(p, ch) <= cutoff:
                    out.append(ch)
                elif step == 1 or ch < vertex:
                    break
                ch += step
        return sorted(out)

    def window(self, cutoff: Rational, max_sector: int = DEFAULT_WINDOW) -> List[CosetGrade]:
        """Nonempty grades with T' <= cutoff and |p| <= max_sector."""
        if max_sector < 0:
            raise ValueError(f"lattice window must be nonnegative, got {max_sector}")
        cutoff = Fraction(cutoff)
        out = []
        for p in range(-max_sector, max_sector + 1):
            for ch in self._charges(p, cutoff):
                t = self.min_tprime(p, ch)
                while t <= cutoff:
                    if self.basis((t, p, ch)):
                        out.append((t, p, ch))
                    t += 1
        out.sort()
        return out

    def window_vectors(self, cutoff: Rational, max_sector: int = DEFAULT_WINDOW) -> List[TensorState]:
        return [{key: 1} for g in self.window(cutoff, max_sector) for key in self.basis(g)]

    # states

    def vacuum(self) -> TensorState:
        if not self.is_vacuum:
            raise ValueError(f"{self.label} is not the vacuum module")
        return tensor_product(self.module.highest_weight(), {vacuum(): 1})

    def state(self, modes: Sequence[ModeSymbol], right: LatticeState, scale: Number = 1) -> TensorState:
        """modes applied to the N=2 highest-weight vector, tensored with a lattice state."""
        return tensor_product(self.module.word(modes), {right: 1}, scale)

    # modes

    def tensor_mode(self, f: Field, t: Rational, w: TensorState) -> TensorState:
        """(u (x) v)_(t) w = sum_j (-1)^{|v||w1|} u_(j) w1 (x) v_(t-j-1) w2."""
        t = Fraction(t)
        if t.denominator != 1:
            raise ValueError(f"mode index {t} of {f} is not allowed: indices are integers on this module")
        tt = int(t)
        out: TensorState = {}
        for ((grade, idx), state), c in w.items():
            sign = -1 if f.right_parity and grade[1] % 2 else 1
            lo = tt - 1 - _right_max(f, state)
            if f.left == "1":
                # 1_(j) is the identity at j = -1 and zero otherwise
                js = range(-1, 0) if lo <= -1 else range(0)
            else:
                js = range(lo, math.floor(grade[0] + FIELD_WEIGHT[f.left] - 1) + 1)
            for j in js:
                if f.left == "1":
                    target, coords = grade, {idx: 1}
                else:
                    x = vertex_mode(f.left, j)
                    target = shift(grade, x)
                    coords = self.module.act(x, grade, idx)
                if not coords:
                    continue
                image = _right_action(f, tt - j - 1, state)
                if not image:
                    continue
                add_scaled(out, tensor_product((target, coords), image), sign * c)
        return out

    def act(self, name: str, n: Rational, w: TensorState) -> TensorState:
        """A rational operator on a vector, assembled from memoised images of its keys."""
        if name not in OPERATORS:
            raise ValueError(f"unknown operator {name!r}, expected one of {OPERATORS}")
        out: TensorState = {}
        for key, c in w.items():
            add_scaled(out, self.apply(name, n, key), c)
        return out

    def apply(self, name: str, n: Rational, key: TensorKey) -> TensorState:
        """Image of one basis key; the result is shared, do not mutate it."""
        found = self._images.get((name, n, key))
        if found is None:
            found = self._image(name, n, key)
            self._images[name, n, key] = found
        return found

    def _image(self, name: str, n: Rational, key: TensorKey) -> TensorState:
        if Fraction(n).denominator != 1:
            raise ValueError(f"mode index {n} of {name} is not allowed: indices are integers on this module")
        w = {key: 1}
        if name == "E":
            return self.tensor_mode(Field("G+", "exp", -1), n, w)
        if name == "F":
            return scaled(self.tensor_mode(Field("G-", "exp", 1), n, w), self.k)
        if name in ("H", "rho"):
            left = self.tensor_mode(Field("J", "1"), n, w)
            right = self.tensor_mode(Field("1", "alpha"), n, w)
            if name == "H":
                return combine((self.m + 2, left), (-self.m, right))
            return difference(left, right)
        if name == "L":
            # L_ns2(n) (x) 1 + 1 (x) L~(n)
            out = self.tensor_mode(Field("L", "1"), Fraction(n) + 1, w)
            n2_key, state = key
            image = modified_virasoro_modes(V_L, int(n), {state: 1})
            return add_scaled(out, {(n2_key, s): b for s, b in image.items()})
        if name == "L_rho":
            return self._rho_virasoro(int(n), key)
        return combine(
            (1, self.apply("L", n, key)),
            (-1, self.apply("L_rho", n, key)),
            (Fraction(n + 1, 4), self.apply("H", n, key)),
        )

    def current(self, name: str, n: Rational, w: TensorState) -> TensorState:
        if name == "R":
            return scaled(self.act("rho", n, w), self.sqrt_k)
        if name not in CURRENTS:
            raise ValueError(f"unknown current {name!r}, expected one of {CURRENTS}")
        return self.act(name, n, w)

    def total_virasoro(self, n: int, w: TensorState) -> TensorState:
        """L_ns2(n) (x) 1 + 1 (x) L~(n)."""
        return self.act("L", n, w)

    def _rho_bound(self, key: TensorKey) -> int:
        tprime, p, ch = self.grade_of_key(key)
        return math.floor(tprime - self.min_tprime(p, ch))

    def _rho_virasoro(self, n: int, key: TensorKey) -> TensorState:
        top = self._rho_bound(key)
        quad: TensorState = {}
        for j in range(n - top, 0):
            add_scaled(quad, self.act("rho", j, self.apply("rho", n - j, key)))
        for j in range(0, top + 1):
            add_scaled(quad, self.act("rho", n - j, self.apply("rho", j, key)))
        return combine((-self.k / 2, quad), (self.k * (n + 1) / 2, self.apply("rho", n, key)))

    def rho_virasoro(self, n: int, w: TensorState) -> TensorState:
        """L_rho(n) = -1/2 sum :R(j)R(n-j): + 1/2 sqrt(k) (n+1) R(n), evaluated through rho = R / sqrt(k)."""
        return self.act("L_rho", n, w)

    def sl2_virasoro(self, n: int, w: TensorState) -> TensorState:
        """Modes of omega_sl2 = omega_total - omega_rho - 1/4 L(-1)h."""
        return self.act("L_sl2", n, w)

    def operator(self, name: str) -> Callable[[int, TensorState], TensorState]:
        if name == "R":
            return lambda n, w: self.current("R", n, w)
        if name not in OPERATORS:
            raise ValueError(f"unknown operator {name!r}")
        return lambda n, w: self.act(name, n, w)

    def target(self, name: str, n: int, grade: CosetGrade) -> CosetGrade:
        dp, dch = SHIFTS[name]
        return grade[0] - n, grade[1] + dp, grade[2] + dch

    def matrix(self, name: str, n: int, grade: CosetGrade) -> Tuple[CosetGrade, Matrix]:
        """The component of operator `name` at index n from `grade`, rows indexed by the target basis."""
        op = self.operator(name)
        target = self.target(name, n, grade)
        rows = self.index(target)
        cols = self.basis(grade)
        out: Matrix = [[0] * len(cols) for _ in rows]
        for j, key in enumerate(cols):
            for image_key, c in op(n, {key: 1}).items():
                i = rows.get(image_key)
                if i is None:
                    raise RuntimeError(f"{name}({n}) image of {key} left the grade {target}")
                out[i][j] = c
        return target, out

    def to_vector(self, grade: CosetGrade, coords: Sequence[Number]) -> TensorState:
        return {key: c for key, c in zip(self.basis(grade), coords) if c}


def render_key(key: TensorKey, module: IrreducibleModule) -> str:
    (grade, idx), state = key
    return f"{module.render(grade, idx)}(x){state}"


def state_json(vec: TensorState, model: CosetModel) -> List[Dict[str, Any]]:
    return [
        {"left": model.module.render(*left), "right": state.to_json(), "coeff": to_json(c)}
        for (left, state), c in sorted(vec.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    ]


@dataclass
class CosetGenerators:
    e: TensorState
    f: TensorState
    h: TensorState
    rho: TensorState
    omega_sl2: TensorState

    @classmethod
    def build(cls, model: CosetModel) -> CosetGenerators:
        m = model.m
        e0 = vacuum()
        a1 = LatticeState((1,), 0)
        j1 = [mode("J", -1)]
        e = model.state([mode("G+", -Fraction(3, 2))], exponential(-1))
        f = model.state([mode("G-", -Fraction(3, 2))], exponential(1), model.k)
        h = combine((-m, model.state([], a1)), (m + 2, model.state(j1, e0)))
        rho = scaled(difference(model.state(j1, e0), model.state([], a1)), model.sqrt_k)
        omega = combine(
            (1, model.state([mode("L", -2)], e0)),
            (Fraction(m + 2, 4), model.state(j1 * 2, e0)),
            (-Fraction(m + 2, 2), model.state(j1, a1)),
            (Fraction(m, 4), model.state([], LatticeState((1, 1), 0))),
        )
        return cls(e, f, h, rho, omega)


def extract_affine_modes(
    model: CosetModel,
    cutoff: Rational,
    max_sector: int = DEFAULT_WINDOW,
    max_index: int = DEFAULT_MAX_INDEX,
) -> Dict[Tuple[str, int], Dict[CosetGrade, Tuple[CosetGrade, Matrix]]]:
    """Matrices of E(n), F(n), H(n), R(n), |n| <= max_index, on every window grade."""
    grades = model.window(cutoff, max_sector)
    if not grades:
        raise ValueError(f"cutoff {cutoff} lies below the lowest grade of {model.label}")
    if max_index < 0:
        raise ValueError(f"mode index bound must be nonnegative, got {max_index}")
    out: Dict[Tuple[str, int], Dict[CosetGrade, Tuple[CosetGrade, Matrix]]] = {}
    for name in CURRENTS:
        for n in range(-max_index, max_index + 1):
            out[name, n] = {g: model.matrix(name, n, g) for g in grades}
    return out


def bracket(model: CosetModel, a: str, p: int, b: str, q: int, w: TensorState) -> TensorState:
    """[A(p), B(q)] w; every operator here is even."""
    op_a, op_b = model.operator(a), model.operator(b)
    return difference(op_a(p, op_b(q, w)), op_b(q, op_a(p, w)))


def _delta(p: int, q: int) -> int:
    return 1 if p + q == 0 else 0


def _vanishes(p: int, q: int, w: TensorState) -> TensorState:
    return {}


def affine_relations(model: CosetModel) -> List[Tuple[str, str, str, Callable[[int, int, TensorState], TensorState]]]:
    m = model.m
    cur = model.current
    return [
        ("[E,F]", "E", "F", lambda p, q, w: combine((1, cur("H", p + q, w)), (m * p * _delta(p, q), w))),
        ("[H,E]", "H", "E", lambda p, q, w: scaled(cur("E", p + q, w), 2)),
        ("[H,F]", "H", "F", lambda p, q, w: scaled(cur("F", p + q, w), -2)),
        ("[H,H]", "H", "H", lambda p, q, w: scaled(w, 2 * m * p * _delta(p, q))),
        ("[E,E]", "E", "E", _vanishes),
        ("[F,F]", "F", "F", _vanishes),
    ]


# [R, X] = 0 checked through rho = R / sqrt(k)
RHO_RELATIONS = (
    ("[R,E]", "rho", "E", _vanishes),
    ("[R,F]", "rho", "F", _vanishes),
    ("[R,H]", "rho", "H", _vanishes),
)


def _check_relations(
    report: Report,
    model: CosetModel,
    relations: Sequence[Tuple[str, str, str, Callable[[int, int, TensorState], TensorState]]],
    vectors: Sequence[TensorState],
    max_index: int,
) -> None:
    """Each relation as a matrix identity, column by column over the window keys."""
    indices = range(-max_index, max_index + 1)
    for name, _, _, _ in relations:
        report.touch(name)
    for w in vectors:
        for name, a, b, rhs in relations:
            op_a, op_b = model.operator(a), model.operator(b)
            first = {p: op_a(p, w) for p in indices}
            second = {q: op_b(q, w) for q in indices}
            for p in indices:
                for q in indices:
                    lhs = difference(op_a(p, second[q]), op_b(q, first[p]))
                    report.record(name, lhs == rhs(p, q, w), f"p={p} q={q} on {_describe(model, w)}")


def _describe(model: CosetModel, w: TensorState) -> str:
    return " + ".join(render_key(key, model.module) for key in w)


def _proportional(image: TensorState, w: TensorState) -> Optional[Number]:
    """lambda with image = lambda * w for a single-key w, else None."""
    (key, c), = w.items()
    ratio = simplify(image.get(key, 0) / c)  # type: ignore[operator]
    return ratio if image == scaled(w, ratio) else None


def measure_level(model: CosetModel, vectors: Sequence[TensorState], report: Report) -> Optional[Number]:
    """The central scalar in [E(p), F(-p)] - H(0) = p K, measured at p = 1, 2."""
    seen: List[Number] = []
    report.touch("level")
    for p in (1, 2):
        for w in vectors:
            residual = difference(bracket(model, "E", p, "F", -p, w), model.current("H", 0, w))
            ratio = _proportional(residual, w)
            if ratio is None:
                report.record("level", False, f"p={p}: not central on {_describe(model, w)}")
                continue
            level = simplify(ratio / p)  # type: ignore[operator]
            if level not in seen:
                seen.append(level)
            report.record("level", level == model.m, f"p={p}: level {level} on {_describe(model, w)}")
    return seen[0] if len(seen) == 1 else None


def verify_affine_relations(
    m: int,
    label: Optional[MinimalLabel] = None,
    cutoff: Rational = Fraction(5, 2),
    max_sector: int = DEFAULT_WINDOW,
    max_index: int = DEFAULT_MAX_INDEX,
    verbose: bool = False,
) -> Report:
    model = CosetModel(m, label)
    report = Report(f"affine sl2 m={m} {model.label}", verbose)
    vectors = model.window_vectors(cutoff, max_sector)
    report["vectors"] = len(vectors)
    _check_relations(report, model, affine_relations(model), vectors, max_index)
    level = measure_level(model, vectors, report)
    report["level"] = to_json(level) if level is not None else None
    return report


def verify_rho_heisenberg(
    model: CosetModel, vectors: Sequence[TensorState], max_index: int, report: Report
) -> None:
    """[R(p), R(q)] = -p delta, as [rho(p), rho(q)] = -p delta / k."""
    indices = range(-max_index, max_index + 1)
    report.touch("[R,R]")
    for w in vectors:
        for p in indices:
            for q in indices:
                lhs = bracket(model, "rho", p, "rho", q, w)
                rhs = scaled(w, -p * _delta(p, q) / model.k)
                report.record("[R,R]", lhs == rhs, f"p={p} q={q}")


def verify_sugawara(m: int, verbose: bool = False) -> Report:
    """omega_sl2 = (E(-1)F(-1) + F(-1)E(-1) + H(-1)^2/2) 1 / (2(m+2))."""
    model = CosetModel(m)
    gens = CosetGenerators.build(model)
    vac = model.vacuum()
    cur = model.current
    sugawara = combine(
        (1, cur("E", -1, cur("F", -1, vac))),
        (1, cur("F", -1, cur("E", -1, vac))),
        (HALF, cur("H", -1, cur("H", -1, vac))),
    )
    sugawara = scaled(sugawara, Fraction(1, 2 * (m + 2)))
    report = Report(f"sugawara m={m}", verbose)
    report.record("sugawara", sugawara == gens.omega_sl2, "omega_sl2 differs from the Sugawara vector")
    return report


def check_creation(model: CosetModel, gens: CosetGenerators, report: Report) -> None:
    """X(-1) 1 reproduces the generating states."""
    vac = model.vacuum()
    for name, state in zip(CURRENTS, (gens.e, gens.f, gens.h, gens.rho)):
        report.record("creation", model.current(name, -1, vac) == state, f"{name}(-1)1")


def omega_residual(model: CosetModel, gens: CosetGenerators) -> Tuple[TensorState, TensorState]:
    """(omega_total - omega_sl2 - omega_rho, L(-1)h / 4)."""
    vac = model.vacuum()
    rho = model.operator("rho")
    omega_total = model.total_virasoro(-2, vac)
    # -1/2 R(-1)^2 1 - sqrt(k)/2 R(-2) 1
    omega_rho = combine(
        (-model.k / 2, rho(-1, rho(-1, vac))),
        (-model.k / 2, rho(-2, vac)),
    )
    residual = combine((1, omega_total), (-1, gens.omega_sl2), (-1, omega_rho))
    twist = scaled(model.total_virasoro(-1, gens.h), Fraction(1, 4))
    return residual, twist


def check_virasoro(
    model: CosetModel,
    name: str,
    central_charge: Number,
    vectors: Sequence[TensorState],
    max_index: int,
    report: Report,
) -> Optional[Number]:
    """[L(p), L(q)] = (p-q) L(p+q) + (p^3-p)/12 c delta; returns c measured from [L(2), L(-2)]."""
    op = model.operator(name)
    check = f"virasoro {name}"
    report.touch(check)
    indices = range(-max_index, max_index + 1)
    for w in vectors:
        for p in indices:
            for q in indices:
                lhs = bracket(model, name, p, name, q, w)
                rhs = combine((p - q, op(p + q, w)), (Fraction(p**3 - p, 12) * central_charge * _delta(p, q), w))
                report.record(check, lhs == rhs, f"p={p} q={q} on {_describe(model, w)}")
    if not vectors:
        return None
    w = vectors[0]
    ratio = _proportional(difference(bracket(model, name, 2, name, -2, w), scaled(op(0, w), 4)), w)
    return simplify(ratio * 2) if ratio is not None else None  # type: ignore[operator]


def verify_rho_and_virasoro(
    m: int,
    label: Optional[MinimalLabel] = None,
    cutoff: Rational = Fraction(5, 2),
    max_sector: int = DEFAULT_WINDOW,
    max_index: int = DEFAULT_MAX_INDEX,
    verbose: bool = False,
) -> Report:
    model = CosetModel(m, label)
    report = Report(f"rho and virasoro m={m} {model.label}", verbose)
    vectors = model.window_vectors(cutoff, max_sector)
    report["vectors"] = len(vectors)
    _check_relations(report, model, RHO_RELATIONS, vectors, max_index)
    verify_rho_heisenberg(model, vectors, max_index, report)

    algebra = model if model.is_vacuum else CosetModel(m)
    gens = CosetGenerators.build(algebra)
    check_creation(algebra, gens, report)
    residual, twist = omega_residual(algebra, gens)
    report.record("omega identity", residual == twist, "omega_total - omega_sl2 - omega_rho != L(-1)h/4")
    report["omega residual"] = state_json(residual, algebra)
    report.merge(verify_sugawara(m, verbose))

    c = Fraction(3 * m, m + 2)
    measured = check_virasoro(model, "L_sl2", c, vectors, max_index, report)
    report["central charge"] = to_json(measured) if measured is not None else None
    report.record("central charge", measured == c, f"measured {measured}, expected {c}")
    return report


@dataclass
class AffineHW:
    k: Fraction
    s: Number
    grade: CosetGrade
    vector: TensorState
    sl2_weight: Fraction

    def to_json(self) -> Dict[str, Any]:
        tprime, p, ch = self.grade
        return {
            "k": to_json(self.k),
            "s": to_json(self.s),
            "weight": to_json(tprime),
            "sl2_weight": to_json(self.sl2_weight),
            "sector": p,
            "charge": ch,
        }


@dataclass
class Decomposition:
    vectors: List[AffineHW]
    report: Report
    contained: List[CosetGrade] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        out = self.report.to_json()
        out["highest_weights"] = [hw.to_json() for hw in self.vectors]
        return out


def hw_conditions(model: CosetModel, grade: CosetGrade) -> List[Tuple[str, int]]:
    """E(0), F(1) and rho(n) = R(n) / sqrt(k), n >= 1, as far as rho(n) can reach a nonempty grade."""
    tprime, p, ch = grade
    out = [("E", 0), ("F", 1)]
    n = 1
    while tprime - n >= model.min_tprime(p, ch):
        out.append(("rho", n))
        n += 1
    return out


def highest_weight_vectors(model: CosetModel, grade: CosetGrade) -> List[TensorState]:
    size = len(model.basis(grade))
    if not size:
        return []
    rows: Matrix = []
    for name, n in hw_conditions(model, grade):
        rows.extend(model.matrix(name, n, grade)[1])
    return [model.to_vector(grade, v) for v in nullspace(rows, size)]


def lowering_sources(model: CosetModel, grade: CosetGrade) -> List[Tuple[str, int, CosetGrade]]:
    """(current, n, source) with current(n) mapping source into grade: F(0) and every negative mode."""
    tprime, p, ch = grade
    out = [("F", 0, (tprime, p - 1, ch + 1))]
    for name in RATIONAL_CURRENTS:
        dp, dch = SHIFTS[name]
        n = 1
        while tprime - n >= model.min_tprime(p - dp, ch - dch):
            out.append((name, -n, (tprime - n, p - dp, ch - dch)))
            n += 1
    return out


class _Certificate:
    """Spans D(g) = HW(g) + sum X * D(source) over the lowering modes, inside one window."""

    def __init__(self, model: CosetModel, max_sector: int):
        self.model = model
        self.max_sector = max_sector
        self.hw: Dict[CosetGrade, List[TensorState]] = {}
        self._spans: Dict[CosetGrade, List[TensorState]] = {}
        self._contained: Dict[CosetGrade, bool] = {}

    def inside(self, grade: CosetGrade) -> bool:
        return abs(grade[1]) <= self.max_sector

    def highest_weights(self, grade: CosetGrade) -> List[TensorState]:
        found = self.hw.get(grade)
        if found is None:
            found = highest_weight_vectors(self.model, grade)
            self.hw[grade] = found
        return found

    def span(self, grade: CosetGrade) -> List[TensorState]:
        found = self._spans.get(grade)
        if found is not None:
            return found
        echelon = EchelonBasis()
        found = []
        candidates: List[TensorState] = list(self.highest_weights(grade))
        for name, n, source in lowering_sources(self.model, grade):
            if not self.inside(source) or not self.model.basis(source):
                continue
            for v in self.span(source):
                candidates.append(self.model.act(name, n, v))
        for v in candidates:
            if v and echelon.add(v) is None:
                found.append(v)
        self._spans[grade] = found
        return found

    def contained(self, grade: CosetGrade) -> bool:
        """Every nonempty grade the lowering modes reach from lies in the window."""
        known = self._contained.get(grade)
        if known is not None:
            return known
        ok = True
        for _, _, source in lowering_sources(self.model, grade):
            if not self.model.basis(source):
                continue
            if not self.inside(source) or not self.contained(source):
                ok = False
                break
        self._contained[grade] = ok
        return ok


def find_affine_hw(
    m: int,
    label: Optional[MinimalLabel] = None,
    cutoff: Rational = 2,
    max_sector: int = DEFAULT_WINDOW,
    verbose: bool = False,
) -> Decomposition:
    model = CosetModel(m, label)
    report = Report(f"affine highest weights m={m} {model.label}", verbose)
    cert = _Certificate(model, max_sector)
    grades = model.window(cutoff, max_sector)
    out: List[AffineHW] = []
    contained: List[CosetGrade] = []
    report.touch("k range")
    report.touch("hw weight")
    report.touch("completeness")
    for grade in grades:
        tprime, p, ch = grade
        k = model.h0(p, ch)
        sl2_weight = tprime - model.rho_weight(p, ch)
        for v in cert.highest_weights(grade):
            out.append(AffineHW(k, model.r0(p, ch), grade, v, sl2_weight))
            report.record("k range", k.denominator == 1 and 0 <= k <= m, f"k={k} at {grade}")
            report.record(
                "hw weight",
                sl2_weight == k * (k + 2) / (4 * (m + 2)),
                f"L_sl2(0)={sl2_weight} for k={k} at {grade}",
            )
        if cert.contained(grade):
            contained.append(grade)
            dim = len(model.basis(grade))
            spanned = len(cert.span(grade))
            report.record("completeness", spanned == dim, f"{spanned} of {dim} at {grade}")
    report["grades"] = len(grades)
    report["contained grades"] = len(contained)
    report["highest weights"] = len(out)
    return Decomposition(out, report, contained)
