"""Pointwise symbol calculus at x0 for f(D + A)f and its powers.

A symbol term is ``coeff(x) * xi^alpha * |xi|^p * blade (x) Phi^e``. The
coefficient is a first-order jet at x0: its value and, when it is known,
its gradient. Jets built from the perturbation or from df carry no
gradient, so any attempt to differentiate them raises JetDepthError; the
pipeline only ever differentiates f-powers and |xi|-powers.

Terms also carry an origin tag so the final residue density can be split
into named contributions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .clifford import (
    CliffordElement,
    DimensionError,
    c_threeform,
    c_vector,
    gamma,
    mask_mul,
    mul,
)
from .gaussian import I, ONE, ZERO, GaussianRational, Number
from .point import PointData

MINUS_I = -I


class JetDepthError(RuntimeError):
    """A derivative deeper than the stored first-order jet was requested."""


class HomogeneityError(ValueError):
    """A term was filed under the wrong homogeneity order."""


class UnsupportedOrderError(ValueError):
    """A composition window needs |alpha| >= 2 data or unknown orders."""


# origin tags
SIGMA0_A = "sigma0:A"
SIGMA0_DF = "sigma0:c(df)"
A_LEFT = "p1:c(d)A"
A_RIGHT = "p1:Ac(d)"
DF3_XI = "p1:c(df3)c(xi)"
XI_DF = "p1:c(xi)c(df)"
DX_Q2 = "dx:q-2"
DX_POWER = "dx:power"
DX_SIGMA1 = "dx:sigma1"


class ScalarJet:
    """Value and (optionally) gradient of a scalar field at x0."""

    __slots__ = ("value", "grad")

    def __init__(self, value: Number, grad: Optional[Sequence[Number]]):
        self.value = GaussianRational.coerce(value)
        self.grad = None if grad is None else tuple(GaussianRational.coerce(g) for g in grad)

    @classmethod
    def constant(cls, value: Number, n: int) -> "ScalarJet":
        return cls(value, (ZERO,) * n)

    @classmethod
    def opaque(cls, value: Number) -> "ScalarJet":
        """A value whose derivatives are not tracked."""
        return cls(value, None)

    def drop_grad(self) -> "ScalarJet":
        return ScalarJet(self.value, None)

    def dx(self, j: int) -> GaussianRational:
        """Partial derivative along x_j (0-based) at x0."""
        if self.grad is None:
            raise JetDepthError("derivative requested of a jet without gradient data")
        return self.grad[j]

    def __add__(self, other: "ScalarJet") -> "ScalarJet":
        grad = None
        if self.grad is not None and other.grad is not None:
            grad = tuple(a + b for a, b in zip(self.grad, other.grad))
        return ScalarJet(self.value + other.value, grad)

    def __neg__(self):
        return ScalarJet(-self.value, None if self.grad is None else tuple(-g for g in self.grad))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ScalarJet):
            k = GaussianRational.coerce(other)
            return ScalarJet(self.value * k, None if self.grad is None else tuple(g * k for g in self.grad))
        grad = None
        if self.grad is not None and other.grad is not None:
            a, b = self.value, other.value
            grad = tuple(a * gb + b * ga for ga, gb in zip(self.grad, other.grad))
        return ScalarJet(self.value * other.value, grad)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarJet":
        if not self.value:
            raise ZeroDivisionError("jet with zero value is not invertible")
        inv = self.value.inverse()
        grad = None if self.grad is None else tuple(-g * inv * inv for g in self.grad)
        return ScalarJet(inv, grad)

    def __pow__(self, k: int) -> "ScalarJet":
        if k < 0:
            return self.inverse() ** (-k)
        value = self.value ** k
        grad = None
        if self.grad is not None:
            # d(a^k) = k a^(k-1) da
            c = k * self.value ** (k - 1) if k else ZERO
            grad = tuple(c * g for g in self.grad)
        return ScalarJet(value, grad)

    def __eq__(self, other):
        return isinstance(other, ScalarJet) and self.value == other.value and self.grad == other.grad

    def __bool__(self):
        return bool(self.value) or bool(self.grad and any(self.grad))

    def __repr__(self):
        g = "?" if self.grad is None else "(" + ", ".join(map(str, self.grad)) + ")"
        return f"ScalarJet({self.value}; {g})"


@dataclass(frozen=True)
class XiMonomial:
    """xi^exponents * |xi|^norm_power with norm_power even."""

    exponents: Tuple[int, ...]
    norm_power: int = 0

    def __post_init__(self):
        if self.norm_power % 2:
            raise ValueError("norm_power must be even")
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative xi exponent")

    @property
    def degree(self) -> int:
        return sum(self.exponents) + self.norm_power

    @classmethod
    def unit(cls, n: int, norm_power: int = 0) -> "XiMonomial":
        return cls((0,) * n, norm_power)

    @classmethod
    def xi(cls, n: int, j: int, norm_power: int = 0) -> "XiMonomial":
        e = [0] * n
        e[j] = 1
        return cls(tuple(e), norm_power)


def _xi_d(exps: Tuple[int, ...], p: int, j: int) -> List[Tuple[int, Tuple[int, ...], int]]:
    """d/dxi_j of xi^exps |xi|^p as a list of (coefficient, exps, p)."""
    out = []
    if exps[j]:
        e = list(exps)
        e[j] -= 1
        out.append((exps[j], tuple(e), p))
    if p:
        e = list(exps)
        e[j] += 1
        out.append((p, tuple(e), p - 2))
    return out


@dataclass(frozen=True)
class SymbolTerm:
    coeff: ScalarJet
    cliff: CliffordElement
    xi: XiMonomial
    tag: Optional[str] = None
    e_degree: int = 0

    @property
    def degree(self) -> int:
        return self.xi.degree


# key = (tag, e_degree, exponents, norm_power, blade mask)
Key = Tuple[Optional[str], int, Tuple[int, ...], int, int]
Bucket = Dict[Key, ScalarJet]


def _combine_tags(*tags):
    present = [t for t in tags if t]
    if not present:
        return None
    return "+".join(present)


def _bucket_add(bucket: Bucket, key: Key, jet: ScalarJet):
    prev = bucket.get(key)
    bucket[key] = jet if prev is None else prev + jet


def _clean(bucket: Bucket) -> Bucket:
    return {k: j for k, j in bucket.items() if j}


class GradedSymbol:
    """Homogeneous pieces of a symbol for orders bottom..top.

    Orders inside the window with no terms are known to vanish; orders
    outside the window are unknown.
    """

    def __init__(self, dim: int, top: int, bottom: int, orders: Dict[int, Bucket] = None):
        if bottom > top:
            raise ValueError("empty order window")
        self.dim = dim
        self.top = top
        self.bottom = bottom
        self._orders: Dict[int, Bucket] = {}
        for order, bucket in (orders or {}).items():
            if not bottom <= order <= top:
                raise UnsupportedOrderError(f"order {order} outside window [{bottom}, {top}]")
            for key in bucket:
                deg = sum(key[2]) + key[3]
                if deg != order:
                    raise HomogeneityError(f"term of degree {deg} filed under order {order}")
            self._orders[order] = _clean(bucket)

    @classmethod
    def from_terms(cls, dim: int, top: int, bottom: int, terms: Iterable[Tuple[int, SymbolTerm]]):
        orders: Dict[int, Bucket] = {}
        for order, t in terms:
            bucket = orders.setdefault(order, {})
            for mask, c in t.cliff.terms.items():
                key = (t.tag, t.e_degree, t.xi.exponents, t.xi.norm_power, mask)
                _bucket_add(bucket, key, t.coeff * c)
        return cls(dim, top, bottom, orders)

    def bucket(self, order: int) -> Bucket:
        if not self.bottom <= order <= self.top:
            raise UnsupportedOrderError(f"order {order} outside known window [{self.bottom}, {self.top}]")
        return self._orders.get(order, {})

    def terms(self, order: int) -> List[SymbolTerm]:
        out = []
        for key in sorted(self.bucket(order), key=_sort_key):
            tag, e, exps, p, mask = key
            out.append(SymbolTerm(self.bucket(order)[key], CliffordElement(self.dim, {mask: 1}),
                                  XiMonomial(exps, p), tag, e))
        return out

    def tags(self, order: int) -> set:
        return {k[0] for k in self.bucket(order)}

    def restrict(self, top: int = None, bottom: int = None) -> "GradedSymbol":
        top = self.top if top is None else top
        bottom = self.bottom if bottom is None else bottom
        if top > self.top or bottom < self.bottom:
            raise UnsupportedOrderError("cannot widen the known window")
        return GradedSymbol(self.dim, top, bottom,
                            {o: b for o, b in self._orders.items() if bottom <= o <= top})

    def untagged(self) -> "GradedSymbol":
        orders = {}
        for o, b in self._orders.items():
            nb: Bucket = {}
            for (tag, e, exps, p, mask), jet in b.items():
                _bucket_add(nb, (None, e, exps, p, mask), jet)
            orders[o] = nb
        return GradedSymbol(self.dim, self.top, self.bottom, orders)

    def select(self, tags: Iterable[Optional[str]]) -> "GradedSymbol":
        tags = set(tags)
        return GradedSymbol(self.dim, self.top, self.bottom,
                            {o: {k: j for k, j in b.items() if k[0] in tags} for o, b in self._orders.items()})

    def left_mul(self, x: CliffordElement) -> "GradedSymbol":
        """x * sigma for an x-independent, xi-independent Clifford element x."""
        orders = {}
        for o, b in self._orders.items():
            nb: Bucket = {}
            for (tag, e, exps, p, mask), jet in b.items():
                for mx, cx in x.terms.items():
                    sign, mm = mask_mul(mx, mask)
                    _bucket_add(nb, (tag, e, exps, p, mm), jet.drop_grad() * (cx * sign))
            orders[o] = nb
        return GradedSymbol(self.dim, self.top, self.bottom, orders)

    def __add__(self, other: "GradedSymbol") -> "GradedSymbol":
        top, bottom = min(self.top, other.top), max(self.bottom, other.bottom)
        orders = {}
        for o in range(bottom, top + 1):
            nb = dict(self._orders.get(o, {}))
            for k, j in other._orders.get(o, {}).items():
                _bucket_add(nb, k, j)
            orders[o] = nb
        return GradedSymbol(self.dim, top, bottom, orders)

    def scale(self, k: Number) -> "GradedSymbol":
        return GradedSymbol(self.dim, self.top, self.bottom,
                            {o: {key: j * k for key, j in b.items()} for o, b in self._orders.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self, order: int) -> bool:
        return not normal_form(self.bucket(order), self.dim)

    def equals(self, other: "GradedSymbol", orders: Iterable[int] = None, values_only: bool = False) -> bool:
        """Exact equality of the tag-free normal forms over the given orders."""
        if orders is None:
            orders = range(max(self.bottom, other.bottom), min(self.top, other.top) + 1)
        for o in orders:
            ba, bb = self.bucket(o), other.bucket(o)
            # both sides must be expanded to the same |xi| power
            target = min((k[3] for k in itertools.chain(ba, bb)), default=0)
            a = normal_form(ba, self.dim, values_only, target)
            b = normal_form(bb, other.dim, values_only, target)
            if a != b:
                return False
        return True

    def __repr__(self):
        parts = []
        for o in range(self.top, self.bottom - 1, -1):
            parts.append(f"{o}: {len(self._orders.get(o, {}))} terms")
        return f"GradedSymbol(dim={self.dim}, " + ", ".join(parts) + ")"


def _sort_key(key: Key):
    tag, e, exps, p, mask = key
    return (tag or "", e, mask, exps, p)


def _expand_norm(exps: Tuple[int, ...], p: int, target: int, n: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Rewrite xi^exps |xi|^p as sum c * xi^e |xi|^target with target <= p."""
    terms = {exps: 1}
    for _ in range((p - target) // 2):
        nxt: Dict[Tuple[int, ...], int] = {}
        for e, c in terms.items():
            for j in range(n):
                ee = list(e)
                ee[j] += 2
                ee = tuple(ee)
                nxt[ee] = nxt.get(ee, 0) + c
        terms = nxt
    return [(e, c) for e, c in terms.items()]


def normal_form(bucket: Bucket, n: int, values_only: bool = False, target: int = None) -> Dict:
    """Unique representation of one homogeneous order, ignoring tags.

    All terms are brought to the smallest |xi| power present (or ``target``)
    by expanding |xi|^2 = sum xi_j^2; at fixed |xi| power the xi-polynomial
    is unique.
    """
    if not bucket:
        return {}
    if target is None:
        target = min(k[3] for k in bucket)
    out: Dict[Tuple, object] = {}
    for (tag, e, exps, p, mask), jet in bucket.items():
        for ee, c in _expand_norm(exps, p, target, n):
            key = (e, ee, mask)
            val = jet * c
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    if values_only:
        out = {k: j.value for k, j in out.items() if j.value}
        return out
    return {k: (j.value, j.grad) for k, j in out.items() if j}


# composition


def _mul_buckets(a: Bucket, b: Bucket, out: Bucket, extra_tag=None):
    for (ta, ea, xa, pa, ma), ja in a.items():
        for (tb, eb, xb, pb, mb), jb in b.items():
            sign, mm = mask_mul(ma, mb)
            jet = ja * jb
            if sign < 0:
                jet = -jet
            key = (_combine_tags(ta, tb, extra_tag), ea + eb,
                   tuple(i + j for i, j in zip(xa, xb)), pa + pb, mm)
            _bucket_add(out, key, jet)


def _xi_derivative(bucket: Bucket, j: int) -> Bucket:
    out: Bucket = {}
    for (tag, e, exps, p, mask), jet in bucket.items():
        for c, ee, pp in _xi_d(exps, p, j):
            _bucket_add(out, (tag, e, ee, pp, mask), jet * c)
    return out


def _x_derivative(bucket: Bucket, j: int) -> Bucket:
    """D_{x_j} = -sqrt(-1) d/dx_j; the result has no gradient data."""
    out: Bucket = {}
    for key, jet in bucket.items():
        d = jet.dx(j)
        if d:
            _bucket_add(out, key, ScalarJet.opaque(MINUS_I * d))
    return out


def compose(A: GradedSymbol, B: GradedSymbol, min_order: int, deriv_tag: str = None) -> GradedSymbol:
    """Symbol of the product of operators with symbols A and B.

    Keeps orders top..min_order where top = A.top + B.top, using
    sum_alpha (1/alpha!) d_xi^alpha A * D_x^alpha B with |alpha| <= 1; a
    window reaching order top-2 would need |alpha| = 2 and is refused.
    ``deriv_tag`` labels the terms created by the |alpha| = 1 part.
    """
    if A.dim != B.dim:
        raise DimensionError("dimension mismatch in compose")
    top = A.top + B.top
    if min_order > top:
        raise UnsupportedOrderError("window lies above the leading order")
    if min_order < top - 1:
        raise UnsupportedOrderError(
            f"order {min_order} needs |alpha| >= 2 terms (leading order {top})")
    if min_order < A.bottom + B.top or min_order < A.top + B.bottom:
        raise UnsupportedOrderError(f"order {min_order} needs symbol orders that are not known")
    orders: Dict[int, Bucket] = {o: {} for o in range(min_order, top + 1)}
    for oa in range(A.bottom, A.top + 1):
        for ob in range(B.bottom, B.top + 1):
            o = oa + ob
            if o >= min_order:
                _mul_buckets(A.bucket(oa), B.bucket(ob), orders[o])
            if o - 1 >= min_order:
                for j in range(A.dim):
                    da = _xi_derivative(A.bucket(oa), j)
                    if not da:
                        continue
                    db = _x_derivative(B.bucket(ob), j)
                    _mul_buckets(da, db, orders[o - 1], deriv_tag)
    return GradedSymbol(A.dim, top, min_order, orders)


# building blocks


def f_jet(point: PointData) -> ScalarJet:
    return ScalarJet(point.f_value, point.f_grad)


def perturbation(point: PointData) -> Tuple[CliffordElement, int]:
    """Clifford part of the perturbation and its End(E) degree.

    For the twisted kind the perturbation is gamma (x) Phi; the spinor part
    gamma is returned with degree 1, and traces of such terms are weighted
    by tr_E(Phi) instead of dim E.
    """
    n = point.n
    if point.kind == "torsion":
        return c_threeform(point.T), 0
    if point.kind == "imaginary-vector":
        return c_vector(point.X, n).scale(I), 0
    if point.kind == "grading-vector":
        return mul(c_vector(point.X, n), gamma(n)), 0
    if point.kind == "twisted":
        return gamma(n), 1
    raise ValueError(f"unknown kind {point.kind!r}")


def _gen(n: int, j: int) -> CliffordElement:
    return CliffordElement(n, {1 << j: 1})


def _add(bucket: Bucket, tag, e, exps, p, cliff: CliffordElement, jet: ScalarJet):
    for mask, c in cliff.terms.items():
        _bucket_add(bucket, (tag, e, exps, p, mask), jet * c)


def square_symbol(point: PointData) -> GradedSymbol:
    """Orders 2 and 1 of the symbol of (f(D+A)f)^2 at x0."""
    n = point.n
    f = f_jet(point)
    A, e = perturbation(point)
    zero = (0,) * n
    p2: Bucket = {}
    _bucket_add(p2, (None, 0, zero, 2, 0), f ** 4)
    p1: Bucket = {}
    f4 = (f ** 4).drop_grad() * I
    df = [f.dx(a) for a in range(n)]
    for j in range(n):
        xj = XiMonomial.xi(n, j).exponents
        cj = _gen(n, j)
        _add(p1, A_LEFT, e, xj, 0, mul(cj, A), f4)
        _add(p1, A_RIGHT, e, xj, 0, mul(A, cj), f4)
        for a in range(n):
            if not df[a]:
                continue
            ca = _gen(n, a)
            # sqrt(-1) f c(d f^3) c(xi) = 3 sqrt(-1) f^3 df_a c_a c_j xi_j
            _add(p1, DF3_XI, 0, xj, 0, mul(ca, cj), ScalarJet.opaque(I * 3 * f.value ** 3 * df[a]))
            _add(p1, XI_DF, 0, xj, 0, mul(cj, ca), ScalarJet.opaque(I * f.value ** 3 * df[a]))
    return GradedSymbol(n, 2, 1, {2: p2, 1: p1})


def first_power_symbol(point: PointData, mode: str = "derived") -> GradedSymbol:
    """Orders 1 and 0 of the symbol of f(D+A)f at x0.

    ``mode='paper'`` drops the f c(df) term in order 0; ``mode='derived'``
    keeps it, as required by f D f = f^2 D + f c(df).
    """
    if mode not in ("paper", "derived"):
        raise ValueError(f"mode must be 'paper' or 'derived', got {mode!r}")
    n = point.n
    f = f_jet(point)
    A, e = perturbation(point)
    s1: Bucket = {}
    f2 = f ** 2
    for j in range(n):
        _bucket_add(s1, (None, 0, XiMonomial.xi(n, j).exponents, 0, 1 << j), f2 * I)
    s0: Bucket = {}
    zero = (0,) * n
    _add(s0, SIGMA0_A, e, zero, 0, A, f2.drop_grad())
    if mode == "derived":
        for a in range(n):
            d = f.dx(a)
            if d:
                _bucket_add(s0, (SIGMA0_DF, 0, zero, 0, 1 << a), ScalarJet.opaque(f.value * d))
    return GradedSymbol(n, 1, 0, {1: s1, 0: s0})


def invert_square(p: GradedSymbol) -> GradedSymbol:
    """Orders -2 and -3 of a right parametrix q with p o q = 1.

    q_{-2} = p_2^{-1} and
    q_{-3} = -p_2^{-1} (p_1 q_{-2} + sum_j d_xi_j p_2 D_x_j q_{-2}).
    """
    n = p.dim
    p2 = p.bucket(2)
    keys = list(p2)
    zero = (0,) * n
    if len(keys) != 1 or keys[0][1:] != (0, zero, 2, 0):
        raise ValueError("leading symbol must be a scalar multiple of |xi|^2")
    jet = p2[keys[0]]
    if not jet.value:
        raise ZeroDivisionError("leading symbol vanishes")
    q2: Bucket = {(None, 0, zero, -2, 0): jet.inverse()}
    r: Bucket = {}
    _mul_buckets(p.bucket(1), q2, r)
    for j in range(n):
        da = _xi_derivative(p2, j)
        if da:
            _mul_buckets(da, _x_derivative(q2, j), r, DX_Q2)
    q3: Bucket = {}
    _mul_buckets(q2, r, q3)
    q3 = {k: -jet for k, jet in q3.items()}
    return GradedSymbol(n, -2, -3, {-2: q2, -3: q3})


def power_symbol(q: GradedSymbol, m: int, mode: str = "derived", point: PointData = None,
                 reading: "PaperReading" = None) -> GradedSymbol:
    """Orders -2m and -2m-1 of the m-th power of the parametrix q.

    ``derived`` composes q with itself m times (q^(k) = q^(k-1) o q).
    ``paper`` ignores q and returns the printed closed form built from
    ``point`` (see :func:`paper_power_symbol`).
    """
    if m < 2:
        raise ValueError("power must be at least 2")
    if mode == "paper":
        if point is None:
            raise ValueError("paper mode needs the point data")
        return paper_power_symbol(point, reading or PaperReading())
    if mode != "derived":
        raise ValueError(f"unknown mode {mode!r}")
    acc = q
    for k in range(2, m + 1):
        acc = compose(acc, q, -2 * k - 1, DX_POWER)
    return acc


def power_symbol_left(q: GradedSymbol, m: int) -> GradedSymbol:
    """Same power, iterated as q o q^(k-1); used as a cross-check."""
    acc = q
    for k in range(2, m + 1):
        acc = compose(q, acc, -2 * k - 1, DX_POWER)
    return acc


def closed_form_power(q: GradedSymbol, m: int, sum_upper: int = None) -> GradedSymbol:
    """Orders -2m, -2m-1 via m s^(m-1) q_{-3} - i sum_k d_xi s^(m-k-1) d_x s s^k.

    ``s`` is q_{-2}; ``sum_upper`` defaults to m-2.
    """
    n = q.dim
    s = q.bucket(-2)
    if sum_upper is None:
        sum_upper = m - 2

    def spow(k):
        out: Bucket = {(None, 0, (0,) * n, 0, 0): ScalarJet.constant(1, n)}
        for _ in range(k):
            nxt: Bucket = {}
            _mul_buckets(out, s, nxt)
            out = nxt
        return out

    top = spow(m)
    low: Bucket = {}
    _mul_buckets(spow(m - 1), q.bucket(-3), low)
    low = {k: j * m for k, j in low.items()}
    for k in range(sum_upper + 1):
        left = spow(m - k - 1)
        right = spow(k)
        for j in range(n):
            da = _xi_derivative(left, j)
            db = _x_derivative(s, j)
            tmp: Bucket = {}
            _mul_buckets(da, db, tmp, DX_POWER)
            _mul_buckets(tmp, right, low)
    return GradedSymbol(n, -2 * m, -2 * m - 1, {-2 * m: top, -2 * m - 1: low})


@dataclass(frozen=True)
class PaperReading:
    """Choices for the printed power symbol.

    ``cross_factor`` multiplies the d(f^-4) cross sum (2 in the symbol
    formula, 1 in the worked proof terms); ``sum_upper`` is the last k of
    that sum relative to m (-2 or -3).
    """

    cross_factor: int = 2
    sum_upper_offset: int = -2


def paper_sigma_minus3(point: PointData) -> GradedSymbol:
    """Printed order -3 symbol of (f(D+A)f)^-2 at x0 (metric terms vanish)."""
    n = point.n
    f = f_jet(point)
    fv = f.value
    A, e = perturbation(point)
    df = f.grad
    df_m4 = (f ** -4).grad
    b: Bucket = {}
    for mu in range(n):
        xm = XiMonomial.xi(n, mu).exponents
        cm = _gen(n, mu)
        k = ScalarJet.opaque(-I * fv ** -4)
        _add(b, A_LEFT, e, xm, -4, mul(cm, A), k)
        _add(b, A_RIGHT, e, xm, -4, mul(A, cm), k)
        for a in range(n):
            if not df[a]:
                continue
            ca = _gen(n, a)
            _add(b, DF3_XI, 0, xm, -4, mul(ca, cm), ScalarJet.opaque(-I * fv ** -7 * 3 * fv ** 2 * df[a]))
            _add(b, XI_DF, 0, xm, -4, mul(cm, ca), ScalarJet.opaque(-I * fv ** -5 * df[a]))
        if df_m4[mu]:
            _bucket_add(b, (DX_Q2, 0, xm, -4, 0), ScalarJet.opaque(2 * I * df_m4[mu]))
    q2 = {(None, 0, (0,) * n, -2, 0): f ** -4}
    return GradedSymbol(n, -2, -3, {-2: q2, -3: b})


def paper_power_symbol(point: PointData, reading: PaperReading = PaperReading()) -> GradedSymbol:
    """Printed orders -2m and -2m-1 of (f(D+A)f)^(-2m) at x0.

    sigma_{-2m}   = f^(-4m) |xi|^(-2m)
    sigma_{-2m-1} = -i m f^(-4m) |xi|^(-2m-2) (c(d^mu)A + A c(d^mu)) xi_mu
                    - i m f^(-4m-3) |xi|^(-2m-2) c(df^3) c(xi)
                    - i m f^(-4m-1) |xi|^(-2m-2) c(xi) c(df)
                    + 2i m f^(-4m+4) |xi|^(-2m-2) xi^mu d_mu(f^-4)
                    - 2i sum_k (-m+k+1) f^(-4m+4) |xi|^(-2m-2) xi^mu d_mu(f^-4)
    """
    n, m = point.n, point.m
    f = f_jet(point)
    fv = f.value
    A, e = perturbation(point)
    df = f.grad
    df_m4 = (f ** -4).grad
    P = -2 * m - 2
    cross = sum(-m + k + 1 for k in range(m + reading.sum_upper_offset + 1))
    low: Bucket = {}
    for mu in range(n):
        xm = XiMonomial.xi(n, mu).exponents
        cm = _gen(n, mu)
        k = ScalarJet.opaque(-I * m * fv ** (-4 * m))
        _add(low, A_LEFT, e, xm, P, mul(cm, A), k)
        _add(low, A_RIGHT, e, xm, P, mul(A, cm), k)
        for a in range(n):
            if not df[a]:
                continue
            ca = _gen(n, a)
            _add(low, DF3_XI, 0, xm, P, mul(ca, cm),
                 ScalarJet.opaque(-I * m * fv ** (-4 * m - 3) * 3 * fv ** 2 * df[a]))
            _add(low, XI_DF, 0, xm, P, mul(cm, ca),
                 ScalarJet.opaque(-I * m * fv ** (-4 * m - 1) * df[a]))
        if df_m4[mu]:
            base = fv ** (-4 * m + 4) * df_m4[mu]
            _bucket_add(low, (DX_Q2, 0, xm, P, 0), ScalarJet.opaque(2 * I * m * base))
            if cross:
                _bucket_add(low, (DX_POWER, 0, xm, P, 0),
                            ScalarJet.opaque(-I * reading.cross_factor * cross * base))
    top = {(None, 0, (0,) * n, -2 * m, 0): f ** (-4 * m)}
    return GradedSymbol(n, -2 * m, -2 * m - 1, {-2 * m: top, -2 * m - 1: low})
