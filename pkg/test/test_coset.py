from fractions import Fraction

import pytest

from pyns2.coset import (
    CosetGenerators,
    CosetModel,
    Field,
    Matrix,
    bracket,
    check_creation,
    extract_affine_modes,
    find_affine_hw,
    highest_weight_vectors,
    hw_conditions,
    lowering_sources,
    omega_residual,
    verify_affine_relations,
    verify_rho_and_virasoro,
    verify_sugawara,
)
from pyns2.exactfield import Scalar
from pyns2.linalg import scaled
from pyns2.minimal import MinimalLabel
from pyns2.report import Report

HALF = Fraction(1, 2)


def _product(a: Matrix, b: Matrix, cols: int) -> Matrix:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


def test_model_grading() -> None:
    model = CosetModel(1)
    assert model.is_vacuum
    assert model.k == Fraction(3, 2)
    assert model.sqrt_k * model.sqrt_k == Fraction(3, 2)
    assert model.min_tprime(0, 0) == 0
    assert model.grade_of(model.vacuum()) == (0, 0, 0)
    gens = CosetGenerators.build(model)
    assert model.grade_of(gens.e) == (1, -1, 1)
    assert model.grade_of(gens.f) == (1, 1, -1)
    assert model.grade_of(gens.h) == (1, 0, 0)
    assert (0, 0, 0) in model.window(1, 1)
    with pytest.raises(ValueError):
        model.window(1, -1)


def test_model_errors() -> None:
    model = CosetModel(1)
    with pytest.raises(ValueError):
        CosetModel(2, MinimalLabel.of(1, HALF, HALF))
    with pytest.raises(ValueError):
        model.current("Q", 0, model.vacuum())
    with pytest.raises(ValueError):
        model.tensor_mode(Field("G+", "exp", -1), HALF, model.vacuum())
    with pytest.raises(ValueError):
        extract_affine_modes(model, -10, 1, 1)
    with pytest.raises(ValueError):
        extract_affine_modes(model, 1, 1, -1)
    with pytest.raises(ValueError):
        CosetModel(1, MinimalLabel.of(1, HALF, 3 * HALF)).vacuum()


def test_affine_matrices() -> None:
    model = CosetModel(1)
    modes = extract_affine_modes(model, 1, 1, 1)
    target, matrix = modes["H", 0][(0, 0, 0)]
    assert target == (0, 0, 0)
    assert matrix == [[0]]
    target, matrix = modes["E", -1][(0, 0, 0)]
    assert target == (1, -1, 1)
    assert len(matrix[0]) == 1


def test_images_are_memoised() -> None:
    model = CosetModel(1)
    vac = model.vacuum()
    key = next(iter(vac))
    first = model.apply("E", -1, key)
    assert model.apply("E", -1, key) is first
    assert model.current("E", -1, vac) == first
    rho = model.act("rho", -1, vac)
    assert rho
    assert not any(isinstance(c, Scalar) for c in rho.values())
    assert model.current("R", -1, vac) == scaled(rho, model.sqrt_k)
    assert bracket(model, "R", 1, "R", -1, vac) == scaled(vac, -1)
    assert bracket(model, "rho", 1, "rho", -1, vac) == scaled(vac, -1 / model.k)
    with pytest.raises(ValueError):
        model.act("R", 0, vac)
    with pytest.raises(ValueError):
        model.act("L", HALF, vac)


def test_affine_bracket_as_matrices() -> None:
    model = CosetModel(1)
    grade = (Fraction(1), 0, 0)
    size = len(model.basis(grade))
    up, f_up = model.matrix("F", -1, grade)
    assert model.matrix("E", 1, up)[0] == grade
    e_down = model.matrix("E", 1, up)[1]
    across, e_across = model.matrix("E", 1, grade)
    f_back = model.matrix("F", -1, across)[1]
    h0 = model.matrix("H", 0, grade)[1]
    ef = _product(e_down, f_up, size)
    fe = _product(f_back, e_across, size)
    lhs = [[ef[i][j] - fe[i][j] for j in range(size)] for i in range(size)]
    assert lhs == [[h0[i][j] + (1 if i == j else 0) for j in range(size)] for i in range(size)]


def test_generating_states() -> None:
    model = CosetModel(1)
    gens = CosetGenerators.build(model)
    report = Report("creation")
    check_creation(model, gens, report)
    assert report.passed
    assert report.checks["creation"].checked == 4
    residual, twist = omega_residual(model, gens)
    assert residual == twist
    assert residual
    assert verify_sugawara(1).passed
    assert isinstance(model.sqrt_k, Scalar)


def test_affine_relations_m1() -> None:
    report = verify_affine_relations(1, cutoff=1, max_sector=1, max_index=1)
    assert report.passed, report.to_json()
    assert report["level"] == "1"
    assert report.checks["[E,F]"].checked > 0


def test_rho_and_virasoro_m1() -> None:
    report = verify_rho_and_virasoro(1, cutoff=1, max_sector=1, max_index=1)
    assert report.passed, report.to_json()
    assert report["central charge"] == "1"
    assert report.checks["[R,R]"].checked > 0


def test_vacuum_is_highest_weight() -> None:
    model = CosetModel(1)
    assert hw_conditions(model, (Fraction(0), 0, 0)) == [("E", 0), ("F", 1)]
    assert hw_conditions(model, (Fraction(2), 0, 0))[2:] == [("rho", 1), ("rho", 2)]
    assert len(highest_weight_vectors(model, (Fraction(0), 0, 0))) == 1
    sources = lowering_sources(model, (Fraction(1), 0, 0))
    assert ("F", 0, (1, -1, 1)) in sources
    assert ("H", -1, (0, 0, 0)) in sources


def test_decomposition_m1() -> None:
    found = find_affine_hw(1, cutoff=1, max_sector=1)
    assert found.report.passed, found.report.to_json()
    assert {hw.k for hw in found.vectors} <= {0, 1}
    assert any(hw.grade == (0, 0, 0) and hw.k == 0 for hw in found.vectors)
    assert found.contained
    assert found.to_json()["highest_weights"]


def test_affine_relations_to_three_halves() -> None:
    report = verify_affine_relations(1, cutoff=Fraction(3, 2), max_sector=1, max_index=1)
    assert report.passed, report.to_json()
    assert report["level"] == "1"


def test_decomposition_to_weight_two() -> None:
    found = find_affine_hw(1, cutoff=2, max_sector=1)
    assert found.report.passed, found.report.to_json()
    assert {hw.k for hw in found.vectors} <= {0, 1}
    assert found.report.checks["completeness"].checked > 0


@pytest.mark.slow
def test_affine_relations_default_window() -> None:
    report = verify_affine_relations(1)
    assert report.passed, report.to_json()
    assert report["level"] == "1"
    for name in ("[E,F]", "[H,E]", "[H,F]", "[H,H]", "[E,E]", "[F,F]"):
        assert report.checks[name].checked > 0


@pytest.mark.slow
def test_rho_and_virasoro_default_window() -> None:
    report = verify_rho_and_virasoro(1)
    assert report.passed, report.to_json()
    assert report["central charge"] == "1"
    assert report.checks["omega identity"].checked == 1
    for name in ("[R,E]", "[R,F]", "[R,H]", "[R,R]"):
        assert report.checks[name].checked > 0


@pytest.mark.slow
def test_decomposition_default_window() -> None:
    found = find_affine_hw(1)
    assert found.report.passed, found.report.to_json()
    assert {hw.k for hw in found.vectors} <= {0, 1}
    assert found.contained
