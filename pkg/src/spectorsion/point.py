"""Evaluation context at the base point x0 in normal coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Tuple

from .clifford import DimensionError, ThreeForm
from .gaussian import GaussianRational

KINDS = ("torsion", "imaginary-vector", "grading-vector", "twisted")


def _vec(v, n, name):
    v = tuple(Fraction(x) for x in v)
    if len(v) != n:
        raise DimensionError(f"{name} has {len(v)} components, expected {n}")
    return v


@dataclass(frozen=True)
class PointData:
    """Everything the pointwise density depends on.

    At x0 the metric is the identity, its first derivatives vanish and the
    connection terms (Christoffel symbols, spin connection, twisting
    connection) are zero; none of them is stored.
    """

    n: int
    kind: str
    f_value: Fraction = Fraction(1)
    f_grad: Tuple[Fraction, ...] = ()
    u: Tuple[Fraction, ...] = ()
    v: Tuple[Fraction, ...] = ()
    w: Tuple[Fraction, ...] = ()
    T: ThreeForm = None
    X: Tuple[Fraction, ...] = ()
    phi_trace: GaussianRational = field(default_factory=lambda: GaussianRational(0))
    dim_E: int = 1

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 4 or n % 2:
            raise DimensionError(f"n must be an even integer >= 4, got {n!r}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}; expected one of {KINDS}")
        zero = (Fraction(0),) * n
        set_ = object.__setattr__
        set_(self, "f_value", Fraction(self.f_value))
        if self.f_value == 0:
            raise ValueError("f must not vanish at the base point")
        set_(self, "f_grad", _vec(self.f_grad or zero, n, "f gradient"))
        for name in ("u", "v", "w", "X"):
            set_(self, name, _vec(getattr(self, name) or zero, n, name))
        if self.T is None:
            set_(self, "T", ThreeForm(n))
        elif self.T.dim != n:
            raise DimensionError(f"3-form dimension {self.T.dim} differs from n={n}")
        set_(self, "phi_trace", GaussianRational.coerce(self.phi_trace))
        if not isinstance(self.dim_E, int) or self.dim_E < 1:
            raise ValueError(f"dim_E must be a positive integer, got {self.dim_E!r}")

    @property
    def m(self) -> int:
        return self.n // 2

    def with_(self, **changes) -> "PointData":
        return replace(self, **changes)

    def flat(self) -> "PointData":
        """Same point with the gradient of f set to zero."""
        return replace(self, f_grad=(Fraction(0),) * self.n)

    def unperturbed(self) -> "PointData":
        """Same point with the perturbation switched off."""
        zero = (Fraction(0),) * self.n
        return replace(self, T=ThreeForm(self.n), X=zero, phi_trace=GaussianRational(0))
