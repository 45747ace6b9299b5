from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Union

from .exactfield import Number, Rational, to_json
from .linalg import matrix_rank, nullspace
from .linalg import is_positive_semidefinite as _psd
from .pbw import (
    Monomial,
    StateVector,
    VacuumModule,
    VermaModule,
    VermaParams,
    charges_at,
    levels_upto,
    monomial_grade,
    render_monomial,
)
from .series import CharacterSeries
from .superalg import ModeSymbol, adjoint, grading, mode

Module = Union[VermaModule, VacuumModule]


@dataclass(frozen=True)
class GramMatrix:
    level: Fraction
    charge: int
    basis: List[Monomial]
    entries: List[List[Number]]

    @property
    def size(self) -> int:
        return len(self.basis)

    def rank(self) -> int:
        return matrix_rank(self.entries) if self.entries else 0

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def to_json(self) -> Dict[str, object]:
        return {
            "level": str(self.level),
            "charge": self.charge,
            "basis": [render_monomial(m) for m in self.basis],
            "entries": [[to_json(x) for x in row] for row in self.entries],
        }


def _module(p: Union[VermaParams, Module]) -> Module:
    return p if isinstance(p, VermaModule) else VermaModule(p)


def gram(p: Union[VermaParams, Module], level: Rational, charge: int) -> GramMatrix:
    module = _module(p)
    level = Fraction(level)
    basis = module.basis(level, charge)
    entries = [
        [module.pairing_monomial(u, {v: 1}) for v in basis] for u in basis
    ]
    return GramMatrix(level, charge, basis, entries)


def is_positive_semidefinite(g: GramMatrix) -> bool:
    return _psd(g.entries)


def positive_modes(level: Rational) -> List[ModeSymbol]:
    """All positive ns(2) modes with index at most `level`."""
    bound = Fraction(level)
    out = []
    for kind in ("L", "J"):
        n = 1
        while n <= bound:
            out.append(mode(kind, n))
            n += 1
    r = Fraction(1, 2)
    while r <= bound:
        out.append(mode("G+", r))
        out.append(mode("G-", r))
        r += 1
    return out


def _in_radical(module: Module, v: StateVector) -> bool:
    g = v.grade
    if g is None:
        return True
    return all(not module.pairing_monomial(b, v.terms) for b in module.basis(*g))


def singular_vectors(
    p: Union[VermaParams, Module], level: Rational, charge: int
) -> List[StateVector]:
    """
    A basis of the Gram radical at one grade, i.e. the slice of the maximal
    proper submodule. Each vector is checked to stay in the radical under
    every positive mode of index at most `level`.
    """
    module = _module(p)
    g = gram(module, level, charge)
    if not g.basis:
        return []
    out = []
    for coords in nullspace(g.entries):
        v = StateVector(module, {b: c for b, c in zip(g.basis, coords) if c})
        for x in positive_modes(level):
            image = StateVector(module, module.act_terms(x, v.terms))
            if not _in_radical(module, image):
                raise RuntimeError(f"radical vector {v} leaves the radical under {x}")
        out.append(v)
    return out


def primitive_vectors(
    p: Union[VermaParams, Module], level: Rational, charge: int
) -> List[StateVector]:
    """Vectors killed outright by every positive mode, not just modulo the radical."""
    module = _module(p)
    level = Fraction(level)
    basis = module.basis(level, charge)
    if level == 0:
        return [StateVector(module, {b: 1}) for b in basis]
    if not basis:
        return []
    rows: List[List[Number]] = []
    for x in positive_modes(level):
        images = [module.act(x, b) for b in basis]
        targets: Dict[Monomial, None] = {}
        for image in images:
            for mono in image:
                targets.setdefault(mono)
        for t in targets:
            rows.append([image.get(t, 0) for image in images])
    return [
        StateVector(module, {b: c for b, c in zip(basis, coords) if c})
        for coords in nullspace(rows, len(basis))
    ]


def irreducible_dim(p: Union[VermaParams, Module], level: Rational, charge: int) -> int:
    g = gram(p, level, charge)
    return g.size - g.rank()


def verma_dim(p: Union[VermaParams, Module], level: Rational, charge: int) -> int:
    return len(_module(p).basis(level, charge))


def character(
    p: Union[VermaParams, Module], cutoff: Rational, method: str = "recursive"
) -> CharacterSeries:
    """
    Graded dimensions of the irreducible quotient below `cutoff`, shifted by
    q^h z^q. The recursive method never builds Verma slices; "gram" takes
    Verma dimension minus radical rank grade by grade.
    """
    module = _module(p)
    series = CharacterSeries(Fraction(cutoff), module.h, module.q)
    if method == "gram":
        for level in levels_upto(cutoff):
            for charge in charges_at(level):
                d = irreducible_dim(module, level, charge)
                if d:
                    series[level, charge] = d
        return series
    if method != "recursive":
        raise ValueError(f"unknown character method {method!r}, expected 'recursive' or 'gram'")
    from .irreducible import IrreducibleModule

    irr = IrreducibleModule(module.c, module.h, module.q)
    for level in levels_upto(cutoff):
        for charge in charges_at(level):
            d = irr.dim(level, charge)
            if d:
                series[level, charge] = d
    return series


def contravariance_defect(
    module: Module, x: ModeSymbol, u: Monomial, v: Monomial
) -> Optional[Number]:
    """<x u, v> - <u, ω(x) v>, or None when the grades do not meet."""
    lu, cu = monomial_grade(u)
    w, dc = grading(x)
    if (lu + w, cu + dc) != monomial_grade(v):
        return None
    left = module.pairing(StateVector(module, module.act(x, u)), module.vector(v))
    right = module.pairing(module.vector(u), StateVector(module, module.act(adjoint(x), v)))
    return left - right


def vacuum_params(c: Number) -> VermaParams:
    return VermaParams(c, 0, 0)

