"""Numeric gamma-matrix representation used to cross-check exact traces.

Generators follow the Jordan-Wigner pattern: for k = 1..m,

    Gamma_{2k-1} = Z x ... x Z x X x 1 x ... x 1
    Gamma_{2k}   = Z x ... x Z x Y x 1 x ... x 1

which are Hermitian with Gamma_i Gamma_j + Gamma_j Gamma_i = 2 delta_ij.
The -2 delta convention is reached with the phase G_i = sqrt(-1) Gamma_i,
so every G_i is anti-Hermitian. The relations are re-verified on build.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Tuple

import numpy as np

from .clifford import CliffordElement, DimensionError, gamma, supertrace, trace

MAX_ORACLE_DIM = 12
RELATION_TOL = 1e-12

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _kron_all(factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def relation_residual(gens: List[np.ndarray]) -> float:
    """max over i, j of |G_i G_j + G_j G_i + 2 delta_ij I|."""
    size = gens[0].shape[0]
    eye = np.eye(size, dtype=complex)
    worst = 0.0
    for i, gi in enumerate(gens):
        for j, gj in enumerate(gens):
            r = gi @ gj + gj @ gi + (2.0 * eye if i == j else 0.0)
            worst = max(worst, float(np.abs(r).max()))
    return worst


@lru_cache(maxsize=None)
def _generators(n: int) -> Tuple[np.ndarray, ...]:
    m = n // 2
    gens = []
    for k in range(m):
        for pauli in (_X, _Y):
            hermitian = _kron_all([_Z] * k + [pauli] + [_I2] * (m - k - 1))
            g = 1j * hermitian
            g.setflags(write=False)
            gens.append(g)
    residual = relation_residual(gens)
    if residual > RELATION_TOL:
        raise RuntimeError(f"generator construction violates Clifford relations (residual {residual:g})")
    return tuple(gens)


def build_generators(n: int) -> List[np.ndarray]:
    """n complex 2^m x 2^m matrices with G_i G_j + G_j G_i = -2 delta_ij."""
    if n % 2 or n < 2:
        raise DimensionError(f"oracle needs even n, got {n}")
    if n > MAX_ORACLE_DIM:
        raise DimensionError(f"oracle limited to n <= {MAX_ORACLE_DIM}, got {n}")
    return list(_generators(n))


@lru_cache(maxsize=None)
def _blade_matrix(n: int, mask: int) -> np.ndarray:
    gens = _generators(n)
    size = gens[0].shape[0]
    out = np.eye(size, dtype=complex)
    i = 0
    while mask:
        if mask & 1:
            out = out @ gens[i]
        mask >>= 1
        i += 1
    out.setflags(write=False)
    return out


def represent(x: CliffordElement) -> np.ndarray:
    """Matrix of x in the spinor representation."""
    build_generators(x.dim)
    size = 2 ** (x.dim // 2)
    out = np.zeros((size, size), dtype=complex)
    for mask, c in x.terms.items():
        out = out + complex(c) * _blade_matrix(x.dim, mask)
    return out


def trace_numeric(x: CliffordElement) -> complex:
    return complex(np.trace(represent(x)))


def supertrace_numeric(x: CliffordElement) -> complex:
    return complex(np.trace(represent(x) @ represent(gamma(x.dim))))


def trace_error(x: CliffordElement) -> Tuple[float, float]:
    """(|numeric trace - exact trace|, |numeric Str - exact Str|)."""
    return (
        abs(trace_numeric(x) - complex(trace(x))),
        abs(supertrace_numeric(x) - complex(supertrace(x))),
    )
