import itertools
import math
from fractions import Fraction

import pytest

from spectorsion.clifford import CliffordElement
from spectorsion.sphere import (
    gamma_closed_form,
    integrate_symbol,
    monomial_integral,
    monte_carlo_integral,
    sphere_volume,
)
from spectorsion.symbols import HomogeneityError, ScalarJet, SymbolTerm, XiMonomial


def test_volumes():
    assert sphere_volume(4) == pytest.approx(2 * math.pi ** 2)
    assert sphere_volume(6) == pytest.approx(math.pi ** 3)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_degree_two(n):
    assert monomial_integral((2,) + (0,) * (n - 1)).coeff == Fraction(1, n)


def test_odd_entry_vanishes():
    assert monomial_integral((1, 1, 0, 0)).coeff == 0
    assert monomial_integral((3, 0, 0, 0)).coeff == 0


def test_known_value_n4():
    assert monomial_integral((2, 2, 0, 0)).coeff == Fraction(1, 24)
    assert monomial_integral((4, 0, 0, 0)).coeff == Fraction(1, 8)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        monomial_integral((-2, 0, 0, 0))


@pytest.mark.parametrize("n", [4, 6])
def test_permutation_symmetry(n):
    for alpha in [(4, 2) + (0,) * (n - 2), (2, 2, 2) + (0,) * (n - 3)]:
        ref = monomial_integral(alpha)
        for perm in itertools.permutations(alpha):
            assert monomial_integral(perm) == ref


def test_gamma_form_agrees_on_degree_eight():
    for alpha in [(8, 0, 0, 0), (4, 2, 2, 0), (2, 2, 2, 2)]:
        assert monomial_integral(alpha).coeff == gamma_closed_form(alpha)


def test_sum_of_squares_integrates_to_one():
    # sum_j xi_j^2 = 1 on the sphere
    n = 6
    total = sum(monomial_integral(tuple(2 * (i == j) for i in range(n))).coeff for j in range(n))
    assert total == 1


def test_monte_carlo_single():
    assert monte_carlo_integral((2, 2, 0, 0)) == pytest.approx(1 / 24, rel=1e-3)


def _term(exps, p, cliff=None):
    n = len(exps)
    return SymbolTerm(ScalarJet.constant(Fraction(3), n), cliff or CliffordElement.scalar(n), XiMonomial(exps, p))


def test_integrate_symbol_examples():
    n, m = 4, 2
    c = CliffordElement.blade(n, (1, 2))
    cliff, val = integrate_symbol(_term((1, 1, 0, 0), -2 * m - 2, c), n)
    assert val.coeff == 0
    cliff, val = integrate_symbol(_term((2, 0, 0, 0), -2 * m - 2, c), n)
    assert val.coeff == Fraction(1, 4) and cliff == c.scale(3)
    cliff, val = integrate_symbol(_term((0, 0, 0, 0), -2 * m), n)
    assert val.coeff == 1
    cliff, val = integrate_symbol(_term((2, 2, 0, 0), -2 * m - 4), n)
    assert val.coeff == Fraction(1, 24)


def test_integrate_symbol_homogeneity_guard():
    with pytest.raises(HomogeneityError):
        integrate_symbol(_term((1, 0, 0, 0), -4), 4)
