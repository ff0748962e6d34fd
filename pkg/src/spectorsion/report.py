"""JSON and markdown I/O: point files in, report files out."""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional

from . import __version__
from .clifford import ThreeForm
from .gaussian import GaussianRational, parse_rational
from .ledger import DiscrepancyLedger, LedgerRow
from .point import KINDS, PointData
from .torsion import MODES, TERM_NAMES, THEOREM_VARIANTS, TermReport, numeric_value, theorem_density

UNITS = "Vol*trid"
TOOL = "spectorsion"


class InputError(ValueError):
    """Malformed point file; the message names the offending location."""


# point files


def _at(path: str, msg: str) -> InputError:
    return InputError(f"{path}: {msg}")


def _rational(raw: Any, path: str):
    if not isinstance(raw, str):
        raise _at(path, f"expected a rational string like \"p/q\", got {type(raw).__name__}")
    try:
        return parse_rational(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise _at(path, f"bad rational {raw!r} ({exc})") from None


def _gaussian(raw: Any, path: str) -> GaussianRational:
    if not isinstance(raw, str):
        raise _at(path, f"expected a rational string, got {type(raw).__name__}")
    try:
        return GaussianRational.parse(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise _at(path, f"bad number {raw!r} ({exc})") from None


def _int(raw: Any, path: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise _at(path, f"expected an integer, got {raw!r}")
    return raw


def _vector(raw: Any, n: int, path: str):
    if not isinstance(raw, list):
        raise _at(path, "expected a list of rational strings")
    if len(raw) != n:
        raise _at(path, f"expected {n} components, got {len(raw)}")
    return tuple(_rational(x, f"{path}[{i}]") for i, x in enumerate(raw))


def point_from_dict(doc: Dict[str, Any]) -> Dict[str, Any]:
    """Validate a point document.

    Returns ``{"point": PointData, "modes": [...], "thm47_variant": str}``.
    """
    if not isinstance(doc, dict):
        raise _at("$", "top level must be an object")
    known = {"n", "kind", "f", "u", "v", "w", "X", "T", "phi_trace", "dim_E", "mode", "thm47_variant"}
    for key in doc:
        if key not in known:
            raise _at(f"$.{key}", "unknown field")
    if "n" not in doc:
        raise _at("$.n", "missing")
    n = _int(doc["n"], "$.n")
    if n < 4 or n % 2:
        raise _at("$.n", f"must be an even integer >= 4, got {n}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise _at("$.kind", f"must be one of {list(KINDS)}, got {kind!r}")

    f = doc.get("f", {})
    if not isinstance(f, dict):
        raise _at("$.f", "expected an object with value and grad")
    f_value = _rational(f.get("value", "1"), "$.f.value")
    if f_value == 0:
        raise _at("$.f.value", "f must not vanish")
    f_grad = _vector(f["grad"], n, "$.f.grad") if "grad" in f else None

    vecs = {name: _vector(doc[name], n, f"$.{name}") for name in ("u", "v", "w", "X") if name in doc}

    components = {}
    raw_T = doc.get("T", [])
    if not isinstance(raw_T, list):
        raise _at("$.T", "expected a list of {j, l, t, val} objects")
    for k, entry in enumerate(raw_T):
        path = f"$.T[{k}]"
        if not isinstance(entry, dict):
            raise _at(path, "expected an object")
        idx = tuple(_int(entry.get(c), f"{path}.{c}") for c in ("j", "l", "t"))
        if any(i < 1 or i > n for i in idx):
            raise _at(path, f"indices {idx} out of range 1..{n}")
        if not idx[0] < idx[1] < idx[2]:
            raise _at(path, f"indices {idx} must be strictly increasing")
        if idx in components:
            raise _at(path, f"duplicate triple {idx}")
        components[idx] = _rational(entry.get("val"), f"{path}.val")

    phi = _gaussian(doc.get("phi_trace", "0"), "$.phi_trace")
    dim_E = _int(doc.get("dim_E", 1), "$.dim_E")
    if dim_E < 1:
        raise _at("$.dim_E", "must be positive")

    mode = doc.get("mode", "both")
    if mode not in ("paper", "derived", "both"):
        raise _at("$.mode", f"must be paper, derived or both, got {mode!r}")
    variant = doc.get("thm47_variant", "f3")
    if variant not in THEOREM_VARIANTS:
        raise _at("$.thm47_variant", f"must be f or f3, got {variant!r}")

    point = PointData(
        n=n, kind=kind, f_value=f_value, f_grad=f_grad or (),
        T=ThreeForm(n, components),
        phi_trace=phi, dim_E=dim_E, **vecs,
    )
    modes = list(MODES) if mode == "both" else [mode]
    return {"point": point, "modes": modes, "thm47_variant": variant}


def load_point(text: str) -> Dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return point_from_dict(doc)


def point_to_dict(point: PointData) -> Dict[str, Any]:
    n = point.n
    T = [{"j": j, "l": l, "t": t, "val": str(val)} for (j, l, t), val in sorted(point.T.components.items())]
    return {
        "n": n,
        "kind": point.kind,
        "f": {"value": str(point.f_value), "grad": [str(x) for x in point.f_grad]},
        "u": [str(x) for x in point.u],
        "v": [str(x) for x in point.v],
        "w": [str(x) for x in point.w],
        "X": [str(x) for x in point.X],
        "T": T,
        "phi_trace": str(point.phi_trace),
        "dim_E": point.dim_E,
    }


# reports


def term_report_to_dict(r: TermReport, point: PointData) -> Dict[str, Any]:
    total_num = numeric_value(r.total, point)
    return {
        "mode": r.mode,
        "units": UNITS,
        "trace_id": r.trace_id,
        "terms": {name: str(r.terms[name]) for name in TERM_NAMES},
        "total": str(r.total),
        "numeric_total": {"re": total_num.real, "im": total_num.imag},
    }


def term_report_from_dict(doc: Dict[str, Any], kind: str, n: int) -> TermReport:
    return TermReport(
        kind=kind,
        mode=doc["mode"],
        n=n,
        terms={name: GaussianRational.parse(doc["terms"][name]) for name in TERM_NAMES},
        total=GaussianRational.parse(doc["total"]),
        trace_id=doc["trace_id"],
    )


def _opt(x: Optional[GaussianRational]) -> Optional[str]:
    return None if x is None else str(x)


def ledger_row_to_dict(row: LedgerRow) -> Dict[str, Any]:
    return {
        "section": row.section,
        "name": row.name,
        "engine": {k: str(v) for k, v in row.engine.items()},
        "printed": _opt(row.printed),
        "difference": {k: _opt(v) for k, v in row.difference.items()},
        "note": row.note,
    }


def ledger_row_from_dict(doc: Dict[str, Any]) -> LedgerRow:
    printed = doc["printed"]
    return LedgerRow(
        section=doc["section"],
        name=doc["name"],
        engine={k: GaussianRational.parse(v) for k, v in doc["engine"].items()},
        printed=None if printed is None else GaussianRational.parse(printed),
        note=doc.get("note", ""),
    )


def ledger_to_dict(led: DiscrepancyLedger) -> Dict[str, Any]:
    return {
        "units": UNITS,
        "rows": [ledger_row_to_dict(r) for r in led.rows],
        "flags": [dict(f) for f in led.flags],
    }


def _envelope(command: str, point: PointData, seed: Optional[int]) -> Dict[str, Any]:
    return {
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "seed": seed,
        "kind": point.kind,
        "n": point.n,
        "point": point_to_dict(point),
    }


def density_report(point: PointData, reports: List[TermReport], thm47_variant: str = "f3",
                   seed: Optional[int] = None) -> Dict[str, Any]:
    doc = _envelope("density", point, seed)
    thm = theorem_density(point, thm47_variant)
    num = numeric_value(thm, point)
    doc["theorem"] = {
        "variant": thm47_variant,
        "value": str(thm),
        "numeric_value": {"re": num.real, "im": num.imag},
    }
    doc["reports"] = [term_report_to_dict(r, point) for r in reports]
    return doc


def ledger_report(led: DiscrepancyLedger, seed: Optional[int] = None) -> Dict[str, Any]:
    doc = _envelope("ledger", led.point, seed)
    doc["reports"] = [term_report_to_dict(led.reports[m], led.point) for m in MODES]
    doc["ledger"] = ledger_to_dict(led)
    return doc


def suite_report(suite: str, seed: int, trials: int, checks: List[Dict[str, Any]]) -> Dict[str, Any]:
    return {
        "tool": TOOL,
        "version": __version__,
        "command": "verify",
        "suite": suite,
        "seed": seed,
        "trials": trials,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


def dumps(doc: Dict[str, Any]) -> str:
    """Canonical serialization: stable key order, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_report(text: str) -> Dict[str, Any]:
    """Inverse of :func:`dumps`, with exact fields rebuilt as objects."""
    doc = json.loads(text)
    out = dict(doc)
    if "point" in doc:
        out["point"] = point_from_dict(doc["point"])["point"]
    if "reports" in doc:
        out["reports"] = [term_report_from_dict(r, doc["kind"], doc["n"]) for r in doc["reports"]]
    if "ledger" in doc:
        out["ledger"] = dict(doc["ledger"], rows=[ledger_row_from_dict(r) for r in doc["ledger"]["rows"]])
    return out


def serialize_parsed(parsed: Dict[str, Any]) -> Dict[str, Any]:
    """Rebuild the JSON document from :func:`parse_report` output."""
    doc = dict(parsed)
    point = parsed.get("point")
    if isinstance(point, PointData):
        doc["point"] = point_to_dict(point)
        if "reports" in parsed:
            doc["reports"] = [term_report_to_dict(r, point) for r in parsed["reports"]]
    if "ledger" in parsed:
        doc["ledger"] = dict(parsed["ledger"], rows=[ledger_row_to_dict(r) for r in parsed["ledger"]["rows"]])
    return doc


# markdown


def _cell(x: Optional[str]) -> str:
    return "" if x is None else f"`{x}`"


def ledger_markdown(led: DiscrepancyLedger) -> str:
    p = led.point
    lines = [
        f"# Discrepancy ledger: {p.kind}, n = {p.n}",
        "",
        f"Values are coefficients of tr[id] Vol(S^{p.n - 1}) (tr[id] = {led.reports['paper'].trace_id}).",
        "",
        "| section | row | engine (paper) | engine (derived) | printed | diff (paper) | diff (derived) |",
        "|---|---|---|---|---|---|---|",
    ]
    for r in led.rows:
        d = r.difference
        lines.append(
            f"| {r.section} | {r.name} | {_cell(_opt(r.engine.get('paper')))} | "
            f"{_cell(_opt(r.engine.get('derived')))} | {_cell(_opt(r.printed))} | "
            f"{_cell(_opt(d.get('paper')))} | {_cell(_opt(d.get('derived')))} |"
        )
    lines += ["", "## Flagged sites", ""]
    for f in led.flags:
        mark = "observed" if f["observed"] else "not visible at this point"
        lines.append(f"- `{f['id']}` ({mark}): {f['description']}")
    return "\n".join(lines) + "\n"
