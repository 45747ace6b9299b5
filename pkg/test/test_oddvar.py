from fractions import Fraction

import pytest

from pyns2.linalg import combine, scaled
from pyns2.oddvar import (
    GrassmannPolynomial,
    ModeFamily,
    Series,
    VertexAlgebra,
    assemble_odd,
    binomial,
    check_derivative_properties,
    check_generator_commutators,
    check_skew_symmetry,
    check_vacuum_and_creation,
    phi_pm_expansion,
    phi_product,
    reconstruct_vertex_operator,
    verify_odd_calculus,
)
from pyns2.superalg import mode

C = Fraction(3, 2)


@pytest.fixture(scope="module")
def algebra() -> VertexAlgebra:
    return VertexAlgebra(C)


def test_binomial() -> None:
    assert binomial(5, 2) == 10
    assert binomial(2, 3) == 0
    assert binomial(-1, 3) == -1
    assert binomial(-2, 2) == 3


def test_phi_product() -> None:
    assert phi_product((1,), (2,)) == (1, (1, 2))
    assert phi_product((2,), (1,)) == (-1, (1, 2))
    assert phi_product((), (1, 2)) == (1, (1, 2))
    assert phi_product((1,), (1, 2)) is None


def test_series() -> None:
    s = Series({-1: {(): 1}, 2: {(): 3}}, top=2)
    assert s.derivative() == Series({-2: {(): -1}, 1: {(): 6}})
    assert s.derivative().top == 1
    assert s.negate_x() == Series({-1: {(): -1}, 2: {(): 3}})
    assert (s - s).exponents() == []
    # comparison stops at the smaller exact range
    assert s == Series({-1: {(): 1}}, top=1)
    assert Series({5: {(): 1}}, top=2).exponents() == []


def test_grassmann_derivatives() -> None:
    one = Series({0: {(): 1}})
    top = GrassmannPolynomial({(1, 2): one})
    assert top.d_phi(1) == GrassmannPolynomial({(2,): one})
    assert top.d_phi(2) == GrassmannPolynomial({(1,): one.scale(-1)})
    assert GrassmannPolynomial({(1,): one}).mul_phi(2) == GrassmannPolynomial({(1, 2): one.scale(-1)})
    assert GrassmannPolynomial({(1,): one}).mul_phi(1) == GrassmannPolynomial()
    with pytest.raises(ValueError):
        GrassmannPolynomial({(2, 1): one})


def test_superderivative_squares_to_d_x() -> None:
    p = GrassmannPolynomial(
        {
            (): Series({0: {(): 1}, 1: {(): 2}, 2: {(): 5}}),
            (1,): Series({1: {(): 7}}),
            (1, 2): Series({0: {(): 3}, 2: {(): -1}}),
        }
    )
    for i in (1, 2):
        assert p.superderivative(i).superderivative(i) == p.d_x()


def test_iterate_formula(algebra: VertexAlgebra) -> None:
    tau = algebra.generator("tau+")
    mu = algebra.generator("mu")
    omega = algebra.generator("omega")
    assert algebra.y_mode(mu, 0, tau) == tau
    assert algebra.y_mode(omega, 1, omega) == scaled(omega, 2)
    assert algebra.y_mode(omega, 3, omega) == {(): C / 2}
    # (J(-1)J(-1)1)_(1) acts on J(-1)^2 1 as 2 J(-1)J(1) + J(0)^2
    jj = algebra.state([mode("J", -1), mode("J", -1)])
    j_minus, j_plus, j_zero = mode("J", -1), mode("J", 1), mode("J", 0)
    expected = combine(
        (2, algebra.act(j_minus, algebra.act(j_plus, jj))),
        (1, algebra.act(j_zero, algebra.act(j_zero, jj))),
    )
    assert algebra.y_mode(jj, 1, jj) == expected
    assert expected == scaled(jj, 4 * C / 3)


def test_mode_family(algebra: VertexAlgebra) -> None:
    mu = algebra.generator("mu")
    family = reconstruct_vertex_operator(algebra, mu, 3)
    series = family.series(mu)
    # J(z)J(-1)1 = (c/3) z^-2 + J(-1)^2 1 + ...
    assert series[-2] == {(): C / 3}
    assert series[-1] == {}
    assert series[0] == algebra.state([mode("J", -1), mode("J", -1)])
    assert series.top == 1


def test_reconstruct_errors(algebra: VertexAlgebra) -> None:
    omega = algebra.generator("omega")
    with pytest.raises(ValueError):
        reconstruct_vertex_operator(algebra, omega, 1)
    with pytest.raises(ValueError):
        assemble_odd(algebra, omega, 2)
    mixed = combine((1, omega), (1, algebra.generator("mu")))
    with pytest.raises(ValueError):
        ModeFamily(algebra, mixed, 4)


def test_phi_pm_expansion(algebra: VertexAlgebra) -> None:
    mu = algebra.generator("mu")
    omega = algebra.generator("omega")
    op = assemble_odd(algebra, mu, 3)
    v = algebra.vacuum()
    expansion = phi_pm_expansion(op, v)
    assert expansion["1"] == ModeFamily(algebra, mu, 3).series(v)
    assert expansion["phi+phi-"] == ModeFamily(algebra, scaled(omega, 2), 3).series(v)
    assert expansion["phi+"][0] == algebra.generator("tau+")
    assert expansion["phi-"][0] == algebra.generator("tau-")
    assert set(expansion) == {"1", "phi+", "phi-", "phi+phi-"}


def test_vacuum_and_creation(algebra: VertexAlgebra) -> None:
    for name in ("mu", "tau+"):
        report = check_vacuum_and_creation(algebra, algebra.generator(name), 2)
        assert report.passed, report.to_json()
        assert report.checks["vacuum"].checked > 0


def test_derivative_properties(algebra: VertexAlgebra) -> None:
    report = check_derivative_properties(algebra, algebra.generator("mu"), 2)
    assert report.passed, report.to_json()
    assert report.checks["G-derivative"].checked > 0
    assert report.checks["L(-1)-derivative"].checked > 0


def test_skew_symmetry(algebra: VertexAlgebra) -> None:
    mu = algebra.generator("mu")
    tau_plus = algebra.generator("tau+")
    tau_minus = algebra.generator("tau-")
    report = check_skew_symmetry(algebra, mu, mu, 3)
    check_skew_symmetry(algebra, tau_plus, tau_minus, 3, report)
    check_skew_symmetry(algebra, mu, tau_plus, 3, report)
    assert report.passed, report.to_json()
    with pytest.raises(ValueError):
        check_skew_symmetry(algebra, combine((1, mu), (1, tau_plus)), mu, 3)


def test_generator_commutators(algebra: VertexAlgebra) -> None:
    report = check_generator_commutators(algebra, max_index=1, cutoff=1)
    assert report.passed, report.to_json()
    assert report.checks["commutator formula"].checked == report.checks["bracket table"].checked


def test_verify_odd_calculus() -> None:
    report = verify_odd_calculus(Fraction(1), cutoff=2, max_weight=1, max_index=1)
    assert report.passed, report.to_json()
    assert report["states"] == 2


@pytest.mark.parametrize("c", [Fraction(1), Fraction(3, 2)])
def test_verify_odd_calculus_to_weight_two(c: Fraction) -> None:
    report = verify_odd_calculus(c, cutoff=Fraction(7, 2), max_weight=2, max_index=2)
    assert report.passed, report.to_json()
    # 1, J(-1), G+(-3/2), G-(-3/2), L(-2), J(-2), J(-1)^2
    assert report["states"] == 7
    assert report.checks["skew-symmetry"].checked > 0
