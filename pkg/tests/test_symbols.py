import random
from fractions import Fraction

import pytest

from spectorsion.clifford import CliffordElement, ThreeForm, c_threeform, gamma, mul, random_threeform, random_vector
from spectorsion.gaussian import I, GaussianRational
from spectorsion.point import KINDS, PointData
from spectorsion.symbols import (
    DX_POWER,
    GradedSymbol,
    HomogeneityError,
    JetDepthError,
    PaperReading,
    ScalarJet,
    SymbolTerm,
    UnsupportedOrderError,
    XiMonomial,
    _xi_derivative,
    closed_form_power,
    compose,
    first_power_symbol,
    invert_square,
    paper_power_symbol,
    paper_sigma_minus3,
    perturbation,
    power_symbol,
    power_symbol_left,
    square_symbol,
)


def e(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


def scalar_symbol(n, order, norm_power, value=1):
    jet = ScalarJet.constant(value, n)
    return GradedSymbol(n, order, order, {order: {(None, 0, (0,) * n, norm_power, 0): jet}})


def unit_symbol(n):
    return scalar_symbol(n, 0, 0)


# jets


def test_jet_product_rule():
    a = ScalarJet(2, (1, 0, 3))
    b = ScalarJet(Fraction(1, 2), (0, 4, -1))
    ab = a * b
    assert ab.value == 1
    assert ab.grad == tuple(GaussianRational(x) for x in (Fraction(1, 2), 8, Fraction(-1, 2)))


def test_jet_negative_power():
    f = ScalarJet(2, (1, 0, 0, 0))
    # d(f^-4) = -4 f^-5 df
    assert (f ** -4).grad[0] == Fraction(-4, 32)
    assert (f ** -4).value == Fraction(1, 16)


def test_opaque_jet_refuses_derivatives():
    with pytest.raises(JetDepthError):
        ScalarJet.opaque(3).dx(0)
    with pytest.raises(JetDepthError):
        ScalarJet(1, (1, 2)).drop_grad().dx(1)


# monomials and grading


def test_xi_monomial_degree():
    assert XiMonomial((2, 1, 0, 0), -6).degree == -3
    with pytest.raises(ValueError):
        XiMonomial((0, 0, 0, 0), -3)


def test_graded_symbol_rejects_wrong_homogeneity():
    n = 4
    bad = {(None, 0, (1, 0, 0, 0), -4, 0): ScalarJet.constant(1, n)}
    with pytest.raises(HomogeneityError):
        GradedSymbol(n, -2, -2, {-2: bad})


def test_norm_power_derivative():
    # d/dxi_mu |xi|^(-2m) = -2m |xi|^(-2m-2) xi_mu
    n, m = 4, 2
    s = scalar_symbol(n, -2 * m, -2 * m)
    for mu in range(n):
        d = _xi_derivative(s.bucket(-2 * m), mu)
        exps = tuple(int(j == mu) for j in range(n))
        assert list(d) == [(None, 0, exps, -2 * m - 2, 0)]
        assert d[(None, 0, exps, -2 * m - 2, 0)].value == -2 * m


def test_equals_is_insensitive_to_norm_expansion():
    n = 4
    a = scalar_symbol(n, 2, 2)
    b_bucket = {(None, 0, tuple(2 * (i == j) for i in range(n)), 0, 0): ScalarJet.constant(1, n) for j in range(n)}
    b = GradedSymbol(n, 2, 2, {2: b_bucket})
    assert a.equals(b) and b.equals(a)


# composition


def test_compose_inverse_scalars():
    n = 4
    p2 = scalar_symbol(n, 2, 2)
    q2 = scalar_symbol(n, -2, -2)
    assert compose(p2, q2, 0).equals(unit_symbol(n), orders=(0,))


def test_compose_refuses_second_order_window():
    n = 4
    p2 = scalar_symbol(n, 2, 2)
    q2 = scalar_symbol(n, -2, -2)
    with pytest.raises(UnsupportedOrderError):
        compose(p2, q2, -2)
    with pytest.raises(UnsupportedOrderError):
        compose(p2, q2, 1)


@pytest.mark.parametrize("m", [2, 3])
def test_scalar_powers_flat(m):
    n = 2 * m
    point = PointData(n, "torsion")
    q = invert_square(square_symbol(point))
    pw = power_symbol(q, m, "derived")
    assert pw.equals(scalar_symbol(n, -2 * m, -2 * m), orders=(-2 * m,))
    assert pw.is_zero(-2 * m - 1)
    assert pw.equals(paper_power_symbol(point), orders=(-2 * m, -2 * m - 1))


# operator symbols


def test_perturbation_examples():
    T = ThreeForm(4, {(1, 2, 3): 1})
    A, e_deg = perturbation(PointData(4, "torsion", T=T))
    assert A == c_threeform(T) and e_deg == 0
    A, _ = perturbation(PointData(4, "imaginary-vector", X=e(4, 0)))
    assert A == CliffordElement.blade(4, (1,), I)
    A, _ = perturbation(PointData(4, "grading-vector", X=e(4, 0)))
    assert A == CliffordElement.blade(4, (2, 3, 4))
    A, e_deg = perturbation(PointData(4, "twisted"))
    assert A == gamma(4) and e_deg == 1


def test_square_symbol_leading_term():
    point = PointData(4, "torsion", f_value=2)
    p = square_symbol(point)
    assert p.equals(scalar_symbol(4, 2, 2, 16), orders=(2,))
    assert p.is_zero(1)


def test_square_symbol_imaginary_vector_order_one():
    # sqrt(-1) f^4 (c(d^j) A + A c(d^j)) xi_j = 2 f^4 <X, xi> for A = sqrt(-1) c(X)
    n = 4
    X = (Fraction(1), Fraction(-2), Fraction(0), Fraction(1, 2))
    p = square_symbol(PointData(n, "imaginary-vector", X=X))
    bucket = {(None, 0, tuple(int(i == j) for i in range(n)), 0, 0): ScalarJet.constant(2 * X[j], n)
              for j in range(n) if X[j]}
    assert p.equals(GradedSymbol(n, 1, 1, {1: bucket}), orders=(1,), values_only=True)


def test_first_power_modes():
    n = 4
    point = PointData(n, "torsion", f_grad=e(n, 0))
    assert first_power_symbol(point, "paper").is_zero(0)
    derived = first_power_symbol(point, "derived")
    c1 = {(None, 0, (0,) * n, 0, 1): ScalarJet.constant(1, n)}
    assert derived.equals(GradedSymbol(n, 0, 0, {0: c1}), orders=(0,), values_only=True)
    with pytest.raises(ValueError):
        first_power_symbol(point, "other")


def test_first_power_flat_torsion_modes_agree():
    T = ThreeForm(4, {(1, 2, 4): 3})
    point = PointData(4, "torsion", T=T)
    assert first_power_symbol(point, "paper").equals(first_power_symbol(point, "derived"))


def test_invert_square_matches_printed_sigma_minus3():
    rng = random.Random(5)
    for kind in KINDS:
        for n in (4, 6):
            point = PointData(n, kind, f_value=Fraction(3, 2), f_grad=random_vector(rng, n),
                              T=random_threeform(rng, n), X=random_vector(rng, n))
            q = invert_square(square_symbol(point))
            assert q.equals(paper_sigma_minus3(point), orders=(-2, -3))


def test_invert_square_gradient_example():
    n = 4
    point = PointData(n, "torsion", f_grad=e(n, 0))
    q = invert_square(square_symbol(point))
    # -sqrt(-1)|xi|^-4 c(df^3) c(xi) + 2 sqrt(-1) |xi|^-4 xi_1 d_1(f^-4) - sqrt(-1) |xi|^-4 c(xi) c(df)
    bucket = {}
    for j in range(n):
        xj = tuple(int(i == j) for i in range(n))
        for coeff, c in ((-3 * I, mul(CliffordElement.generator(n, 1), CliffordElement.generator(n, j + 1))),
                         (-I, mul(CliffordElement.generator(n, j + 1), CliffordElement.generator(n, 1)))):
            for mask, v in c.terms.items():
                key = (None, 0, xj, -4, mask)
                prev = bucket.get(key)
                jet = ScalarJet.opaque(coeff * v)
                bucket[key] = jet if prev is None else prev + jet
    key = (None, 0, (1, 0, 0, 0), -4, 0)
    bucket[key] = bucket[key] + ScalarJet.opaque(2 * I * -4)
    expected = GradedSymbol(n, -3, -3, {-3: bucket})
    assert q.equals(expected, orders=(-3,), values_only=True)


def test_inverse_property_gradient_points():
    rng = random.Random(9)
    for n in (4, 6):
        point = PointData(n, "grading-vector", f_value=3, f_grad=random_vector(rng, n), X=random_vector(rng, n))
        p = square_symbol(point)
        pq = compose(p, invert_square(p), -1)
        assert pq.equals(unit_symbol(n), orders=(0,), values_only=True)
        assert pq.is_zero(-1)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [4, 6])
def test_square_equals_composed_first_power(kind, n):
    rng = random.Random(n)
    point = PointData(n, kind, f_value=Fraction(2, 3), f_grad=random_vector(rng, n),
                      T=random_threeform(rng, n), X=random_vector(rng, n))
    first = first_power_symbol(point, "derived")
    assert compose(first, first, 1).equals(square_symbol(point), orders=(2, 1), values_only=True)


@pytest.mark.parametrize("n", [4, 6])
def test_power_iterations_agree(n):
    m = n // 2
    rng = random.Random(20 + n)
    point = PointData(n, "torsion", f_value=2, f_grad=random_vector(rng, n), T=random_threeform(rng, n))
    q = invert_square(square_symbol(point))
    right = power_symbol(q, m, "derived")
    orders = (-2 * m, -2 * m - 1)
    assert right.equals(power_symbol_left(q, m), orders=orders, values_only=True)
    assert right.equals(closed_form_power(q, m), orders=orders, values_only=True)
    assert right.equals(paper_power_symbol(point), orders=orders, values_only=True)


def test_derived_cross_term_m2():
    # cross term: -2 sqrt(-1) sum_{k=0}^{0} (-m+k+1) = +2 sqrt(-1) times f^(-4m+4) |xi|^(-2m-2) xi^mu d_mu(f^-4)
    n, m = 4, 2
    point = PointData(n, "torsion", f_grad=e(n, 0))
    q = invert_square(square_symbol(point))
    cross = power_symbol(q, m, "derived").select([DX_POWER])
    d_f_m4 = -4
    bucket = {(None, 0, (1, 0, 0, 0), -2 * m - 2, 0): ScalarJet.opaque(2 * I * d_f_m4)}
    assert cross.equals(GradedSymbol(n, -2 * m, -2 * m - 1, {-2 * m - 1: bucket}), orders=(-2 * m - 1,),
                        values_only=True)


def test_paper_reading_changes_only_cross_term():
    n = 6
    point = PointData(n, "torsion", f_grad=e(n, 2))
    base = paper_power_symbol(point)
    half = paper_power_symbol(point, PaperReading(cross_factor=1))
    assert not base.equals(half)
    assert base.select([DX_POWER]).scale(Fraction(1, 2)).equals(half.select([DX_POWER]))


def test_power_symbol_rejects_low_powers():
    q = invert_square(square_symbol(PointData(4, "torsion")))
    with pytest.raises(ValueError):
        power_symbol(q, 1)


def test_homogeneity_guard_rejects_printed_norm_power():
    # the proof writes the cross term with |xi|^(-2m); that term is not of order -2m-1
    n, m = 4, 2
    with pytest.raises(HomogeneityError):
        GradedSymbol(n, -2 * m, -2 * m - 1,
                     {-2 * m - 1: {(DX_POWER, 0, (1, 0, 0, 0), -2 * m, 0): ScalarJet.opaque(1)}})


def test_symbol_term_degree():
    t = SymbolTerm(ScalarJet.opaque(1), CliffordElement.scalar(4), XiMonomial((1, 0, 0, 0), -6))
    assert t.degree == -5
