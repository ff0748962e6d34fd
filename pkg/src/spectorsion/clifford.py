"""Exact Clifford algebra Cl(n) with c(e_i)c(e_j) + c(e_j)c(e_i) = -2 delta_ij.

Blades are stored as bitmasks: bit ``i-1`` set means the generator c(e_i)
appears. Elements are immutable maps ``mask -> GaussianRational`` with no
zero coefficients, so equality is structural.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from .gaussian import ONE, ZERO, GaussianRational, Number, i_power

MAX_DIM = 62


class DimensionError(ValueError):
    """Index out of range, odd dimension, or mismatched dimensions."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


def mask_to_indices(mask: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_to_mask(indices: Iterable[int], n: int) -> int:
    mask = 0
    prev = 0
    for i in indices:
        if not 1 <= i <= n:
            raise DimensionError(f"generator index {i} outside 1..{n}")
        if i <= prev:
            raise DimensionError(f"blade indices must be strictly increasing: {tuple(indices)}")
        prev = i
        mask |= 1 << (i - 1)
    return mask


@lru_cache(maxsize=1 << 16)
def mask_mul(a: int, b: int) -> Tuple[int, int]:
    """Product of two basis blades as ``(sign, mask)``.

    The sign counts the transpositions needed to merge ``b`` into ``a`` and
    one factor -1 per generator shared by both (c_i^2 = -1).
    """
    swaps = 0
    x = a >> 1
    while x:
        swaps += _popcount(x & b)
        x >>= 1
    swaps += _popcount(a & b)
    return (-1 if swaps & 1 else 1), a ^ b


def blade_mul(a: Sequence[int], b: Sequence[int], n: int) -> Tuple[GaussianRational, Tuple[int, ...]]:
    """Multiply the blades c_a and c_b given as increasing index tuples."""
    sign, out = mask_mul(indices_to_mask(a, n), indices_to_mask(b, n))
    return GaussianRational(sign), mask_to_indices(out)


class CliffordElement:
    """Finite linear combination of basis blades over the Gaussian rationals."""

    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[int, Number] = ()):
        if dim < 1 or dim > MAX_DIM:
            raise DimensionError(f"unsupported dimension {dim}")
        clean: Dict[int, GaussianRational] = {}
        top = 1 << dim
        for mask, c in dict(terms).items():
            if not 0 <= mask < top:
                raise DimensionError(f"blade mask {mask:b} outside dimension {dim}")
            c = GaussianRational.coerce(c)
            if c:
                clean[mask] = c
        self.dim = dim
        self.terms = clean
        self._hash = None

    # constructors

    @classmethod
    def scalar(cls, dim: int, value: Number = 1) -> "CliffordElement":
        return cls(dim, {0: value})

    @classmethod
    def generator(cls, dim: int, i: int) -> "CliffordElement":
        return cls(dim, {indices_to_mask((i,), dim): 1})

    @classmethod
    def blade(cls, dim: int, indices: Sequence[int], coeff: Number = 1) -> "CliffordElement":
        return cls(dim, {indices_to_mask(indices, dim): coeff})

    @classmethod
    def zero(cls, dim: int) -> "CliffordElement":
        return cls(dim, {})

    # algebra

    def _check(self, other: "CliffordElement"):
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.dim, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return CliffordElement(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: Number) -> "CliffordElement":
        k = GaussianRational.coerce(k)
        return CliffordElement(self.dim, {m: c * k for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.dim == other.dim and self.terms == other.terms
        try:
            return self == CliffordElement.scalar(self.dim, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.dim, frozenset(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[int, GaussianRational]]:
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def scalar_part(self) -> GaussianRational:
        return self.terms.get(0, ZERO)

    def grades(self) -> set:
        return {_popcount(m) for m in self.terms}

    def __repr__(self):
        if not self.terms:
            return f"CliffordElement({self.dim}, 0)"
        parts = []
        for m, c in sorted(self.terms.items()):
            word = "".join(f"c{i}" for i in mask_to_indices(m)) or "1"
            parts.append(f"({c})*{word}")
        return f"CliffordElement({self.dim}, " + " + ".join(parts) + ")"


def mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    """Bilinear extension of :func:`mask_mul`."""
    x._check(y)
    re: Dict[int, Fraction] = {}
    im: Dict[int, Fraction] = {}
    for ma, ca in x.terms.items():
        ar, ai = ca.re, ca.im
        for mb, cb in y.terms.items():
            sign, m = mask_mul(ma, mb)
            br, bi = cb.re, cb.im
            # accumulate real and imaginary parts without building intermediates
            if ai or bi:
                r = ar * br - ai * bi
                i = ar * bi + ai * br
            else:
                r, i = ar * br, 0
            if sign < 0:
                r, i = -r, -i
            re[m] = re.get(m, 0) + r
            if i:
                im[m] = im.get(m, 0) + i
    out = {}
    for m, r in re.items():
        i = im.get(m, 0)
        if r or i:
            out[m] = GaussianRational(r, i)
    return _canonical(x.dim, out)


def _canonical(dim: int, terms: Dict[int, GaussianRational]) -> CliffordElement:
    # terms already nonzero, in range and typed
    el = CliffordElement.__new__(CliffordElement)
    el.dim = dim
    el.terms = terms
    el._hash = None
    return el


def product(factors: Sequence[CliffordElement]) -> CliffordElement:
    if not factors:
        raise ValueError("empty product")
    acc = factors[0]
    for f in factors[1:]:
        acc = mul(acc, f)
    return acc


def spinor_dim(n: int) -> int:
    """Dimension 2^m of the spinor module; equals tr[id]."""
    if n % 2:
        raise DimensionError(f"spinor trace needs even dimension, got {n}")
    return 2 ** (n // 2)


def trace(x: CliffordElement) -> GaussianRational:
    """Trace in the 2^m-dimensional spinor representation."""
    return x.scalar_part() * spinor_dim(x.dim)


def gamma(n: int) -> CliffordElement:
    """Grading operator (sqrt(-1))^m c(e_1)...c(e_n)."""
    if n % 2 or n < 2:
        raise DimensionError(f"grading operator needs even n >= 2, got {n}")
    return CliffordElement(n, {(1 << n) - 1: i_power(n // 2)})


def supertrace(x: CliffordElement) -> GaussianRational:
    """Str(x) = tr(x * gamma)."""
    return trace(mul(x, gamma(x.dim)))


def c_vector(a: Sequence[Number], n: int = None) -> CliffordElement:
    """c(a) = sum_i a_i c(e_i)."""
    if n is None:
        n = len(a)
    if len(a) != n:
        raise DimensionError(f"vector of length {len(a)} in dimension {n}")
    return CliffordElement(n, {1 << i: a_i for i, a_i in enumerate(a)})


class ThreeForm:
    """Antisymmetric 3-form given by its components on increasing triples."""

    __slots__ = ("dim", "components")

    def __init__(self, dim: int, components: Mapping[Tuple[int, int, int], Number] = ()):
        comps: Dict[Tuple[int, int, int], Fraction] = {}
        for key, val in dict(components).items():
            j, l, t = key
            if not (1 <= j < l < t <= dim):
                raise DimensionError(f"3-form index triple {key} must satisfy 1 <= j < l < t <= {dim}")
            val = Fraction(val)
            if val:
                comps[(j, l, t)] = val
        self.dim = dim
        self.components = comps

    def __call__(self, a: Sequence[Number], b: Sequence[Number], c: Sequence[Number]) -> Fraction:
        """T(a, b, c) for vectors given by components."""
        total = Fraction(0)
        for (j, l, t), val in self.components.items():
            j, l, t = j - 1, l - 1, t - 1
            det = (a[j] * (b[l] * c[t] - b[t] * c[l])
                   - a[l] * (b[j] * c[t] - b[t] * c[j])
                   + a[t] * (b[j] * c[l] - b[l] * c[j]))
            total += val * det
        return total

    def component(self, i: int, j: int, k: int) -> Fraction:
        """T(e_i, e_j, e_k) extended antisymmetrically."""
        idx = [i, j, k]
        if len(set(idx)) < 3:
            return Fraction(0)
        sign = 1
        for p in range(3):
            for q in range(2 - p):
                if idx[q] > idx[q + 1]:
                    idx[q], idx[q + 1] = idx[q + 1], idx[q]
                    sign = -sign
        return sign * self.components.get(tuple(idx), Fraction(0))

    def scaled(self, k: Number) -> "ThreeForm":
        return ThreeForm(self.dim, {key: v * k for key, v in self.components.items()})

    def __add__(self, other: "ThreeForm") -> "ThreeForm":
        out = dict(self.components)
        for key, v in other.components.items():
            out[key] = out.get(key, Fraction(0)) + v
        return ThreeForm(self.dim, out)

    def __eq__(self, other):
        return isinstance(other, ThreeForm) and (self.dim, self.components) == (other.dim, other.components)

    def __repr__(self):
        return f"ThreeForm({self.dim}, {self.components})"


def c_threeform(T: ThreeForm) -> CliffordElement:
    """c(T) = 3/2 sum_{j<l<t} T(e_j,e_l,e_t) c_j c_l c_t."""
    half3 = Fraction(3, 2)
    return CliffordElement(
        T.dim, {indices_to_mask(key, T.dim): val * half3 for key, val in T.components.items()}
    )


def conjugation_sum(x: CliffordElement) -> CliffordElement:
    """sum_s c(e_s) x c(e_s), computed generator by generator."""
    acc = CliffordElement.zero(x.dim)
    for s in range(1, x.dim + 1):
        cs = CliffordElement.generator(x.dim, s)
        acc = acc + mul(mul(cs, x), cs)
    return acc


def all_blades(n: int) -> Iterator[int]:
    return iter(range(1 << n))


def blades_of_grade(n: int, k: int) -> Iterator[int]:
    for idx in combinations(range(1, n + 1), k):
        yield indices_to_mask(idx, n)


# random test data


def random_rational(rng: random.Random, bound: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_gaussian(rng: random.Random, bound: int = 5, den: int = 4) -> GaussianRational:
    return GaussianRational(random_rational(rng, bound, den), random_rational(rng, bound, den))


def random_element(rng: random.Random, n: int, max_blades: int = 8) -> CliffordElement:
    k = rng.randint(1, max_blades)
    return CliffordElement(n, {rng.randrange(1 << n): random_gaussian(rng) for _ in range(k)})


def random_vector(rng: random.Random, n: int) -> Tuple[Fraction, ...]:
    return tuple(random_rational(rng) for _ in range(n))


def random_threeform(rng: random.Random, n: int, density: float = 0.6) -> ThreeForm:
    comps = {}
    for key in combinations(range(1, n + 1), 3):
        if rng.random() < density:
            comps[key] = random_rational(rng)
    return ThreeForm(n, comps)
