"""Invariant suites behind ``spectorsion verify``.

Each suite returns a list of check records ``{"name", "passed", "detail"}``.
Randomness comes from ``random.Random(seed)`` so a seed pins every input.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Dict, List

from .clifford import (
    CliffordElement,
    blades_of_grade,
    c_threeform,
    c_vector,
    conjugation_sum,
    gamma,
    mul,
    product,
    random_element,
    random_threeform,
    random_vector,
    spinor_dim,
    supertrace,
    trace,
)
from .gaussian import GaussianRational, i_power
from .point import KINDS, PointData
from .sphere import gamma_closed_form, integrate_symbol, monomial_integral, monte_carlo_integral
from .symbols import (
    HomogeneityError,
    JetDepthError,
    ScalarJet,
    SymbolTerm,
    XiMonomial,
    closed_form_power,
    compose,
    first_power_symbol,
    invert_square,
    paper_power_symbol,
    power_symbol,
    power_symbol_left,
    square_symbol,
)
from .torsion import g, wedge4

DIMS = (4, 6)
ORACLE_TOL = 1e-9
MC_TOL = 1e-3


def _check(name: str, passed: bool, detail: str = "") -> Dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _gen(n, i):
    return CliffordElement.generator(n, i)


def four_generator_closed_form(r: int, p: int, q: int, mu: int, n: int) -> int:
    d = lambda a, b: int(a == b)  # noqa: E731
    return (d(r, p) * d(q, mu) - d(r, q) * d(p, mu) + d(r, mu) * d(p, q)) * spinor_dim(n)


def trace_pattern(u, v, w, a) -> Fraction:
    """g(u,v)a(w) - g(u,w)a(v) + g(v,w)a(u): the four-vector trace over tr[id]."""
    return g(u, v) * g(w, a) - g(u, w) * g(v, a) + g(v, w) * g(u, a)


# traces


def trace_suite(seed: int, trials: int = 500) -> List[Dict]:
    rng = random.Random(seed)
    out = []
    for n in DIMS:
        tid = spinor_dim(n)
        gens = [_gen(n, i) for i in range(1, n + 1)]
        unit = CliffordElement.scalar(n)

        ok = all(
            mul(gens[i], gens[j]) + mul(gens[j], gens[i]) == (unit.scale(-2) if i == j else CliffordElement.zero(n))
            for i in range(n) for j in range(n)
        )
        out.append(_check(f"anticommutation n={n}", ok))

        bad = 0
        for _ in range(trials):
            x, y, z = (random_element(rng, n) for _ in range(3))
            if mul(mul(x, y), z) != mul(x, mul(y, z)):
                bad += 1
        out.append(_check(f"associativity n={n}", bad == 0, f"{bad}/{trials} failures"))

        bad = 0
        for _ in range(trials):
            x, y = random_element(rng, n), random_element(rng, n)
            if trace(mul(x, y)) != trace(mul(y, x)):
                bad += 1
        out.append(_check(f"trace symmetry n={n}", bad == 0, f"{bad}/{trials} failures"))

        bad = 0
        for k in (1, 3, 5):
            for idx in itertools.product(range(n), repeat=k):
                if trace(product([gens[i] for i in idx])):
                    bad += 1
        out.append(_check(f"odd-degree trace vanishing n={n}", bad == 0))

        bad = 0
        for r, p, q, mu in itertools.product(range(n), repeat=4):
            if trace(product([gens[r], gens[p], gens[q], gens[mu]])) != four_generator_closed_form(r, p, q, mu, n):
                bad += 1
        out.append(_check(f"four-generator trace n={n}", bad == 0, f"{n ** 4} quadruples"))

        bad_t = bad_df = bad_x = 0
        for _ in range(trials):
            u, v, w, a = (random_vector(rng, n) for _ in range(4))
            T = random_threeform(rng, n)
            cuvw = product([c_vector(u), c_vector(v), c_vector(w)])
            if trace(mul(cuvw, c_threeform(T))) != Fraction(3, 2) * T(u, v, w) * tid:
                bad_t += 1
            # c(df^3) with f^3 gradient a: the pattern reads g(v,w)u(a) - g(u,w)v(a) + g(u,v)w(a)
            expected = (g(v, w) * g(u, a) - g(u, w) * g(v, a) + g(u, v) * g(w, a)) * tid
            if trace(mul(cuvw, c_vector(a))) != expected:
                bad_df += 1
            if trace(mul(cuvw, c_vector(a))) != trace_pattern(u, v, w, a) * tid:
                bad_x += 1
        out.append(_check(f"three-form trace n={n}", bad_t == 0, f"{bad_t}/{trials} failures"))
        out.append(_check(f"gradient trace n={n}", bad_df == 0, f"{bad_df}/{trials} failures"))
        out.append(_check(f"vector trace n={n}", bad_x == 0, f"{bad_x}/{trials} failures"))

        bad = 0
        gam = gamma(n)
        for _ in range(trials):
            u, v, w, X = (random_vector(rng, n) for _ in range(4))
            val = trace(product([c_vector(u), c_vector(v), c_vector(w), c_vector(X), gam]))
            expected = -4 * wedge4(u, v, w, X) if n == 4 else 0
            if val != expected:
                bad += 1
        out.append(_check(f"wedge trace n={n}", bad == 0, f"{bad}/{trials} failures"))

        bad = 0
        for k in range(n + 1):
            for mask in blades_of_grade(n, k):
                b = CliffordElement(n, {mask: 1})
                if conjugation_sum(b) != b.scale((-1) ** k * (2 * k - n)):
                    bad += 1
        out.append(_check(f"conjugation law n={n}", bad == 0))

        out.extend(supertrace_checks(n, rng, 10_000 if n == 6 else 0))
    return out


def supertrace_checks(n: int, rng: random.Random, random_blades: int = 0) -> List[Dict]:
    m = n // 2
    top_expected = GaussianRational(spinor_dim(n)) / i_power(m)
    top = (1 << n) - 1
    bad = 0
    for mask in range(1 << n):
        val = supertrace(CliffordElement(n, {mask: 1}))
        if val != (top_expected if mask == top else 0):
            bad += 1
    checks = [_check(f"supertrace all blades n={n}", bad == 0, f"Str(top) = {top_expected}")]
    if random_blades:
        bad = 0
        for _ in range(random_blades):
            mask = rng.getrandbits(n)
            val = supertrace(CliffordElement(n, {mask: 1}))
            if val != (top_expected if mask == top else 0):
                bad += 1
        checks.append(_check(f"supertrace random blades n={n}", bad == 0, f"{random_blades} blades"))
    return checks


# sphere


def even_multi_indices(n: int, max_degree: int):
    for alpha in itertools.product(range(max_degree + 1), repeat=n):
        if sum(alpha) <= max_degree:
            yield alpha


def sphere_suite(seed: int, trials: int = 10) -> List[Dict]:
    rng = random.Random(seed)
    out = []
    for n in DIMS:
        bad = total = 0
        for alpha in even_multi_indices(n, 6):
            total += 1
            if monomial_integral(alpha).coeff != gamma_closed_form(alpha):
                bad += 1
        out.append(_check(f"recursion = gamma form n={n}", bad == 0, f"{total} multi-indices"))

        ok = all(
            monomial_integral(tuple(2 * (i == j) for i in range(n))).coeff == Fraction(1, n)
            for j in range(n)
        )
        ok = ok and all(
            not monomial_integral(tuple(int(i in (j, k)) for i in range(n))).coeff
            for j in range(n) for k in range(j + 1, n)
        )
        out.append(_check(f"degree-2 delta/n n={n}", ok))

        bad = 0
        for alpha in even_multi_indices(n, 6):
            for perm in itertools.permutations(range(n)):
                if monomial_integral(tuple(alpha[p] for p in perm)) != monomial_integral(alpha):
                    bad += 1
                    break
        out.append(_check(f"permutation symmetry n={n}", bad == 0))

    n = 4
    worst = 0.0
    for _ in range(trials):
        alpha = tuple(2 * rng.randint(0, 2) for _ in range(n))
        exact = float(monomial_integral(alpha).coeff)
        est = monte_carlo_integral(alpha, seed=seed)
        worst = max(worst, abs(est - exact) / exact)
    out.append(_check("monte carlo n=4", worst <= MC_TOL, f"{trials} monomials, worst relative error {worst:.2e}"))
    return out


# oracle


def oracle_suite(seed: int, trials: int = 1000, tol: float = ORACLE_TOL) -> List[Dict]:
    import numpy as np

    from .oracle import build_generators, relation_residual, represent, trace_numeric, supertrace_numeric

    rng = random.Random(seed)
    out = []
    for n in DIMS:
        res = relation_residual(build_generators(n))
        out.append(_check(f"generator relations n={n}", res <= 1e-12, f"residual {res:.1e}"))
        worst = 0.0
        for _ in range(trials):
            x = random_element(rng, n)
            worst = max(worst, abs(trace_numeric(x) - complex(trace(x))),
                        abs(supertrace_numeric(x) - complex(supertrace(x))))
        out.append(_check(f"trace and supertrace n={n}", worst <= tol,
                          f"{trials} elements, worst {worst:.2e}, tol {tol:g}"))
        worst = 0.0
        for _ in range(trials):
            x, y = random_element(rng, n), random_element(rng, n)
            worst = max(worst, float(np.abs(represent(mul(x, y)) - represent(x) @ represent(y)).max()))
        out.append(_check(f"homomorphism n={n}", worst <= tol, f"{trials} pairs, worst {worst:.2e}, tol {tol:g}"))
    return out


# symbols


def sample_point(rng: random.Random, n: int, kind: str, gradient: bool = True) -> PointData:
    f = Fraction(rng.randint(1, 3), rng.randint(1, 2))
    return PointData(
        n=n, kind=kind, f_value=f,
        f_grad=random_vector(rng, n) if gradient else (),
        u=random_vector(rng, n), v=random_vector(rng, n), w=random_vector(rng, n),
        T=random_threeform(rng, n), X=random_vector(rng, n),
        phi_trace=GaussianRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), rng.randint(-2, 2)),
        dim_E=rng.randint(1, 3),
    )


def symbol_suite(seed: int, trials: int = 3) -> List[Dict]:
    rng = random.Random(seed)
    out = []
    for n in DIMS:
        m = n // 2
        for kind in KINDS:
            bad_inv = bad_sq = bad_left = bad_closed = bad_mode = 0
            for _ in range(trials):
                point = sample_point(rng, n, kind)
                p = square_symbol(point)
                q = invert_square(p)
                pq = compose(p, q, -1)
                unit = {(None, 0, (0,) * n, 0, 0): ScalarJet.constant(1, n)}
                if not pq.equals(type(pq)(n, 0, -1, {0: unit, -1: {}}), orders=(0, -1), values_only=True):
                    bad_inv += 1
                first = first_power_symbol(point, "derived")
                sq = compose(first, first, 1)
                if not sq.equals(p, orders=(2, 1), values_only=True):
                    bad_sq += 1
                right = power_symbol(q, m, "derived")
                if not right.equals(power_symbol_left(q, m), orders=(-2 * m, -2 * m - 1), values_only=True):
                    bad_left += 1
                if not right.equals(closed_form_power(q, m), orders=(-2 * m, -2 * m - 1), values_only=True):
                    bad_closed += 1
                flat = point.flat()
                qf = invert_square(square_symbol(flat))
                if not power_symbol(qf, m, "derived").equals(
                        paper_power_symbol(flat), orders=(-2 * m, -2 * m - 1), values_only=True):
                    bad_mode += 1
            tag = f"{kind} n={n}"
            out.append(_check(f"inverse property {tag}", bad_inv == 0, f"{bad_inv}/{trials} failures"))
            out.append(_check(f"square of first power {tag}", bad_sq == 0, f"{bad_sq}/{trials} failures"))
            out.append(_check(f"left = right iteration {tag}", bad_left == 0, f"{bad_left}/{trials} failures"))
            out.append(_check(f"iteration = closed form {tag}", bad_closed == 0, f"{bad_closed}/{trials} failures"))
            out.append(_check(f"flat f: derived = printed power {tag}", bad_mode == 0, f"{bad_mode}/{trials} failures"))

    try:
        ScalarJet.opaque(1).dx(0)
        out.append(_check("second derivative rejected", False, "no error raised"))
    except JetDepthError:
        out.append(_check("second derivative rejected", True))

    n = 4
    m = n // 2
    # the printed |xi|^(-2m) reading of the cross term has degree -2m+1
    bad_term = SymbolTerm(ScalarJet.constant(1, n), CliffordElement.scalar(n), XiMonomial.xi(n, 0, -2 * m))
    try:
        integrate_symbol(bad_term, n)
        out.append(_check("homogeneity guard", False, "degree -2m+1 term accepted"))
    except HomogeneityError:
        out.append(_check("homogeneity guard", True))
    return out


SUITES: Dict[str, Callable[..., List[Dict]]] = {
    "traces": trace_suite,
    "sphere": sphere_suite,
    "oracle": oracle_suite,
    "symbols": symbol_suite,
}


def run_suite(name: str, seed: int, trials: int = None, tol: float = ORACLE_TOL) -> List[Dict]:
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(name)
    checks = []
    for s in names:
        kwargs = {} if trials is None else {"trials": trials}
        if s == "oracle":
            kwargs["tol"] = tol
        for c in SUITES[s](seed, **kwargs):
            c["suite"] = s
            checks.append(c)
    return checks
