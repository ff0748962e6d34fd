"""Side-by-side comparison of engine densities with the printed values."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .gaussian import ZERO, GaussianRational
from .point import PointData
from .symbols import PaperReading
from .torsion import (
    TERM_NAMES,
    TermReport,
    density,
    gradient_pattern,
    printed_part_two_summary,
    printed_terms,
    theorem_density,
)

PART_TWO = ("II-a", "II-b", "II-c", "II-d", "II-e", "II-f")

FLAGS = {
    "sigma0-missing-fcdf": "order-0 symbol of f(D+A)f is printed without the f c(df) term",
    "cross-sum-factor": "d(f^-4) cross sum carries a factor 2 in the power symbol but not in the term-by-term proof",
    "cross-sum-upper-limit": "cross sum runs to k = m-2 in the power symbol but to k = m-3 for the grading and twisted kinds",
    "grading-theorem-f-power": "grading theorem states v(f^3) etc. while its proof ends with v(f) etc.",
    "part-two-summary-signs": "printed sum of part (II) uses +g(v,w)u(f), unlike its own constituent terms",
}


@dataclass
class LedgerRow:
    section: str
    name: str
    engine: Dict[str, GaussianRational]
    printed: Optional[GaussianRational]
    note: str = ""

    @property
    def difference(self) -> Dict[str, Optional[GaussianRational]]:
        if self.printed is None:
            return {mode: None for mode in self.engine}
        return {mode: val - self.printed for mode, val in self.engine.items()}


@dataclass
class DiscrepancyLedger:
    point: PointData
    reports: Dict[str, TermReport]
    rows: List[LedgerRow] = field(default_factory=list)
    flags: List[dict] = field(default_factory=list)

    def row(self, section: str, name: str) -> LedgerRow:
        for r in self.rows:
            if r.section == section and r.name == name:
                return r
        raise KeyError((section, name))


def _sum(values) -> GaussianRational:
    acc = ZERO
    for v in values:
        acc = acc + v
    return acc


def ledger(point: PointData) -> DiscrepancyLedger:
    """Run both modes and every printed variant, recording exact differences.

    Nothing here decides which value is right; rows only line values up.
    """
    reports = {mode: density(point, mode) for mode in ("paper", "derived")}
    printed = printed_terms(point)
    out = DiscrepancyLedger(point, reports)
    rows = out.rows

    for name in TERM_NAMES:
        rows.append(LedgerRow("term", name, {m: r.terms[name] for m, r in reports.items()}, printed[name]))

    # alternative readings of the cross sum
    proof = density(point, "paper", PaperReading(cross_factor=1))
    rows.append(LedgerRow("term", "II-f (factor 1)", {"paper": proof.terms["II-f"]}, printed["II-f"],
                          "cross sum without the factor 2"))
    short = density(point, "paper", PaperReading(sum_upper_offset=-3))
    rows.append(LedgerRow("term", "II-f (k <= m-3)", {"paper": short.terms["II-f"]}, printed["II-f"],
                          "cross sum truncated at k = m-3"))

    part2 = {m: _sum(r.terms[k] for k in PART_TWO) for m, r in reports.items()}
    rows.append(LedgerRow("part", "II (sum)", part2, printed_part_two_summary(point), "printed summary line"))
    rows.append(LedgerRow("part", "II (sum of printed terms)", part2, _sum(printed[k] for k in PART_TWO)))

    flat = point.flat()
    flat_reports = {mode: density(flat, mode) for mode in reports}
    pert = {m: r.total for m, r in flat_reports.items()}
    rows.append(LedgerRow("part", "perturbation", pert, theorem_density(flat),
                          "density with grad f = 0 against the stated theorem"))
    grad = {m: reports[m].total - pert[m] for m in reports}
    printed_total = _sum(printed.values())
    printed_flat = _sum(printed_terms(flat).values())
    rows.append(LedgerRow("part", "gradient (sum of printed terms)", grad, printed_total - printed_flat))

    variants = ("f3", "f") if point.kind == "grading-vector" else ("f3",)
    for variant in variants:
        thm = theorem_density(point, variant)
        label = "theorem" if point.kind != "grading-vector" else f"theorem ({'stated, f^3' if variant == 'f3' else 'as proved, f'})"
        rows.append(LedgerRow("total", label, {m: r.total for m, r in reports.items()}, thm))
        rows.append(LedgerRow("part", f"gradient vs {label}", grad, thm - theorem_density(flat, variant)))
    rows.append(LedgerRow("total", "sum of printed terms", {m: r.total for m, r in reports.items()},
                          printed_total))

    G = gradient_pattern(point)
    if G:
        scale = point.f_value ** (-4 * point.m + 1) * G
        coeff = {m: v / scale for m, v in grad.items()}
        rows.append(LedgerRow("coefficient", "gradient coefficient vs theorem", coeff,
                              (theorem_density(point) - theorem_density(flat)) / scale,
                              "multiplier of f^(1-4m) (g(u,w)v(f) - g(v,w)u(f) - g(u,v)w(f))"))
        rows.append(LedgerRow("coefficient", "gradient coefficient vs printed terms", coeff,
                              (printed_total - printed_flat) / scale))

    # flags with what was observed at this point
    df_nonzero = any(point.f_grad)
    fl = out.flags
    fl.append({"id": "sigma0-missing-fcdf", "description": FLAGS["sigma0-missing-fcdf"],
               "observed": reports["derived"].terms["I-df"] != reports["paper"].terms["I-df"]})
    fl.append({"id": "cross-sum-factor", "description": FLAGS["cross-sum-factor"],
               "observed": proof.terms["II-f"] != reports["paper"].terms["II-f"]})
    fl.append({"id": "cross-sum-upper-limit", "description": FLAGS["cross-sum-upper-limit"],
               "observed": point.kind in ("grading-vector", "twisted")
               and short.terms["II-f"] != reports["paper"].terms["II-f"]})
    fl.append({"id": "grading-theorem-f-power", "description": FLAGS["grading-theorem-f-power"],
               "observed": point.kind == "grading-vector"
               and theorem_density(point, "f3") != theorem_density(point, "f")})
    fl.append({"id": "part-two-summary-signs", "description": FLAGS["part-two-summary-signs"],
               "observed": df_nonzero and out.row("part", "II (sum)").printed
               != out.row("part", "II (sum of printed terms)").printed})
    return out
