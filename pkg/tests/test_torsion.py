import math
import random
from fractions import Fraction

import pytest

from spectorsion.clifford import ThreeForm, random_threeform, random_vector
from spectorsion.gaussian import ZERO, GaussianRational
from spectorsion.point import KINDS, PointData
from spectorsion.symbols import PaperReading
from spectorsion.torsion import (
    TERM_NAMES,
    density,
    gradient_pattern,
    numeric_value,
    printed_terms,
    theorem_density,
    trace_id,
    wedge4,
)


def e(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


def scaled(v, a):
    return tuple(a * x for x in v)


def added(a, b):
    return tuple(x + y for x, y in zip(a, b))


def total(point, mode="derived"):
    return density(point, mode).total


# examples


def test_flat_torsion_n4_value():
    point = PointData(4, "torsion", u=e(4, 0), v=e(4, 1), w=e(4, 2), T=ThreeForm(4, {(1, 2, 3): 1}))
    r = density(point)
    assert r.total == -3
    assert numeric_value(r.total, point) == pytest.approx(-24 * math.pi ** 2, rel=1e-12)


def test_flat_grading_n4_value():
    point = PointData(4, "grading-vector", u=e(4, 0), v=e(4, 1), w=e(4, 2), X=e(4, 3))
    r = density(point)
    assert r.total == 2
    assert numeric_value(r.total, point) == pytest.approx(16 * math.pi ** 2, rel=1e-12)


def test_grading_n6_vanishes_without_gradient():
    rng = random.Random(3)
    point = PointData(6, "grading-vector", u=random_vector(rng, 6), v=random_vector(rng, 6),
                      w=random_vector(rng, 6), X=random_vector(rng, 6))
    assert total(point) == 0 and total(point, "paper") == 0


def test_trace_id_twisted():
    assert trace_id(PointData(4, "twisted", dim_E=3)) == 12
    assert trace_id(PointData(6, "torsion")) == 8


def test_density_rejects_unknown_mode():
    with pytest.raises(ValueError):
        density(PointData(4, "torsion"), "other")


def test_terms_cover_every_name():
    r = density(PointData(4, "torsion", f_grad=e(4, 1), u=e(4, 0), v=e(4, 1), w=e(4, 0)), "paper")
    assert set(r.terms) == set(TERM_NAMES)
    assert sum(r.terms.values(), ZERO) == r.total


# multilinearity


@pytest.mark.parametrize("slot", ["u", "v", "w"])
def test_trilinear(slot):
    n = 4
    rng = random.Random("uvw".index(slot))
    base = dict(f_value=Fraction(3, 2), f_grad=random_vector(rng, n), T=random_threeform(rng, n),
                u=random_vector(rng, n), v=random_vector(rng, n), w=random_vector(rng, n))
    a, b = random_vector(rng, n), random_vector(rng, n)
    s, t = Fraction(2, 3), Fraction(-5, 4)
    at = lambda vec: total(PointData(n, "torsion", **{**base, slot: vec}))  # noqa: E731
    assert at(added(scaled(a, s), scaled(b, t))) == s * at(a) + t * at(b)


def test_linear_in_threeform():
    n = 4
    rng = random.Random(11)
    vecs = dict(u=random_vector(rng, n), v=random_vector(rng, n), w=random_vector(rng, n))
    T1, T2 = random_threeform(rng, n), random_threeform(rng, n)
    combo = ThreeForm(n, {k: 2 * T1.components.get(k, 0) - T2.components.get(k, 0)
                          for k in set(T1.components) | set(T2.components)})
    at = lambda T: total(PointData(n, "torsion", T=T, **vecs))  # noqa: E731
    assert at(combo) == 2 * at(T1) - at(T2)


def test_torsion_flat_matches_threeform_evaluation():
    rng = random.Random(4)
    for n in (4, 6):
        point = PointData(n, "torsion", f_value=2, T=random_threeform(rng, n),
                          u=random_vector(rng, n), v=random_vector(rng, n), w=random_vector(rng, n))
        m = n // 2
        expected = -3 * Fraction(2) ** (-4 * m + 2) * point.T(point.u, point.v, point.w)
        assert total(point) == expected


# independence and cancellation


def test_imaginary_vector_cancels():
    rng = random.Random(12)
    for n in (4, 6):
        vecs = dict(u=random_vector(rng, n), v=random_vector(rng, n), w=random_vector(rng, n))
        assert total(PointData(n, "imaginary-vector", X=random_vector(rng, n), **vecs)) == 0


def test_twisted_independent_of_phi():
    vecs = dict(u=e(4, 0), v=e(4, 1), w=e(4, 0), f_grad=e(4, 1))
    ref = density(PointData(4, "twisted", **vecs))
    for phi in ("0", "5/2-3i", "-7"):
        r = density(PointData(4, "twisted", phi_trace=GaussianRational.parse(phi), **vecs))
        assert r.terms == ref.terms and r.total == ref.total


@pytest.mark.parametrize("kind", KINDS)
def test_modes_agree_without_gradient(kind):
    rng = random.Random(KINDS.index(kind))
    n = 4
    point = PointData(n, kind, f_value=Fraction(1, 2), T=random_threeform(rng, n), X=random_vector(rng, n),
                      u=random_vector(rng, n), v=random_vector(rng, n), w=random_vector(rng, n))
    assert density(point, "paper").terms == density(point, "derived").terms


# gradient terms: engine vs printed, recorded not resolved


@pytest.mark.parametrize("n", [4, 6])
def test_gradient_coefficients(n):
    m = n // 2
    point = PointData(n, "torsion", f_grad=e(n, 1), u=e(n, 0), v=e(n, 1), w=e(n, 0))
    G = gradient_pattern(point)
    assert G == 1
    paper, derived = density(point, "paper"), density(point, "derived")
    printed = printed_terms(point)
    for name in ("II-c", "II-d", "II-e", "III"):
        assert paper.terms[name] == printed[name]
    assert paper.terms["II-f"] == -2 * (m - 1)
    assert printed["II-f"] == m - 1
    assert paper.total == 1 and derived.total == 0
    assert theorem_density(point) == m


def test_paper_reading_factor_one_matches_printed_ii_f():
    point = PointData(6, "torsion", f_grad=e(6, 1), u=e(6, 0), v=e(6, 1), w=e(6, 0))
    r = density(point, "paper", PaperReading(cross_factor=1))
    assert r.terms["II-f"] == -(point.m - 1)


# printed and theorem values


def test_printed_flat_torsion_sums_to_theorem():
    point = PointData(6, "torsion", T=ThreeForm(6, {(1, 3, 5): 2}), u=e(6, 0), v=e(6, 2), w=e(6, 4))
    assert sum(printed_terms(point).values(), ZERO) == theorem_density(point) == -6


def test_theorem_grading_variants():
    point = PointData(4, "grading-vector", f_value=2, f_grad=e(4, 1), u=e(4, 0), v=e(4, 1), w=e(4, 0))
    assert theorem_density(point, "f3") == 2 * Fraction(2) ** -7 * 12
    assert theorem_density(point, "f") == 2 * Fraction(2) ** -7
    with pytest.raises(ValueError):
        theorem_density(point, "f2")


def test_wedge4_examples():
    u, v, w, X = (e(4, i) for i in range(4))
    assert wedge4(u, v, w, X) == 1
    assert wedge4(u, u, w, X) == 0
    assert wedge4(v, u, w, X) == -1
    assert wedge4(scaled(u, 3), v, added(w, u), X) == 3
    with pytest.raises(ValueError):
        wedge4(e(6, 0), e(6, 1), e(6, 2), e(6, 3))
