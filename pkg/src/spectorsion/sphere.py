"""Monomial integrals over the unit sphere S^(n-1) in units of its volume."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from .clifford import CliffordElement
from .symbols import HomogeneityError, SymbolTerm


@dataclass(frozen=True)
class SphereValue:
    """coeff * Vol(S^(n-1)), with the volume kept symbolic."""

    coeff: Fraction
    n: int

    def numeric(self) -> float:
        return float(self.coeff) * sphere_volume(self.n)

    def __add__(self, other: "SphereValue") -> "SphereValue":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return SphereValue(self.coeff + other.coeff, self.n)


def sphere_volume(n: int) -> float:
    """Vol(S^(n-1)) = 2 pi^(n/2) / Gamma(n/2)."""
    return 2 * math.pi ** (n / 2) / math.gamma(n / 2)


@lru_cache(maxsize=4096)
def _pairing(alpha: Tuple[int, ...], n: int) -> Fraction:
    # alpha is sorted; lru_cache is safe for concurrent readers
    total = sum(alpha)
    if total == 0:
        return Fraction(1)
    # contract the first copy of the largest index with its partners
    i = len(alpha) - 1
    a = alpha[i]
    rest = list(alpha)
    rest[i] = a - 2
    return Fraction(a - 1, total - 2 + n) * _pairing(tuple(sorted(rest)), n)


def monomial_integral(alpha: Sequence[int]) -> SphereValue:
    """Integral of xi^alpha over S^(n-1), n = len(alpha).

    Uses the pairing recursion: the first factor xi_i pairs with each of
    the remaining a_i - 1 copies of xi_i and the prefactor is
    1/(|alpha| - 2 + n).
    """
    alpha = tuple(int(a) for a in alpha)
    n = len(alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative exponent in {alpha}")
    if any(a % 2 for a in alpha):
        return SphereValue(Fraction(0), n)
    return SphereValue(_pairing(tuple(sorted(a for a in alpha if a)), n), n)


def _half_gamma_ratio(k: int) -> Fraction:
    """Gamma(k + 1/2) / sqrt(pi) = (2k)! / (4^k k!)."""
    return Fraction(math.factorial(2 * k), 4 ** k * math.factorial(k))


def gamma_closed_form(alpha: Sequence[int]) -> Fraction:
    """Same integral from 2 prod Gamma((a_i+1)/2) / Gamma((|alpha|+n)/2), over Vol.

    Independent of the recursion; exact because n is even.
    """
    n = len(alpha)
    if n % 2:
        raise ValueError("closed form implemented for even n")
    if any(a % 2 for a in alpha):
        return Fraction(0)
    num = Fraction(1)
    for a in alpha:
        num *= _half_gamma_ratio(a // 2)
    half = sum(alpha) // 2
    # pi^(n/2) cancels against Vol; Gamma(n/2) / Gamma(half + n/2)
    return num * Fraction(math.factorial(n // 2 - 1), math.factorial(half + n // 2 - 1))


@lru_cache(maxsize=4)
def sphere_samples(n: int, samples: int = 2 ** 20, seed: int = 0) -> np.ndarray:
    """Scrambled Sobol points pushed to S^(n-1) through the Gaussian quantile."""
    from scipy.stats import norm, qmc

    u = qmc.Sobol(d=n, scramble=True, seed=seed).random(samples)
    g = norm.ppf(np.clip(u, 1e-15, 1 - 1e-15))
    x = g / np.linalg.norm(g, axis=1, keepdims=True)
    x.setflags(write=False)
    return x


def monte_carlo_integral(alpha: Sequence[int], samples: int = 2 ** 20, seed: int = 0) -> float:
    """Quasi-random estimate of the average of xi^alpha over the sphere."""
    x = sphere_samples(len(alpha), samples, seed)
    return float(np.prod(x ** np.asarray(alpha), axis=1).mean())


def integrate_symbol(term: SymbolTerm, n: int) -> Tuple[CliffordElement, SphereValue]:
    """Sphere integral of one order -n symbol term.

    Returns the Clifford part scaled by the coefficient value and the
    integral of the xi-monomial (|xi| = 1 on the sphere). A term of any
    other degree raises HomogeneityError.
    """
    if term.xi.degree != -n:
        raise HomogeneityError(f"term of degree {term.xi.degree} cannot enter the residue in dimension {n}")
    return term.cliff.scale(term.coeff.value), monomial_integral(term.xi.exponents)
