"""Report envelopes: JSON serialization, schema validation, table/CSV output.

Every report is {"schema_version", "kind", "config", "data"} and validates
against the shipped schema file.  Unbounded integers are serialized as
decimal strings so nothing is ever rounded; rationals render as "p/q" with a
positive denominator (plain "p" when the denominator is 1).
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from importlib import resources

from . import polys
from .errors import InvariantError
from .ffplaces import FFElement
from .maps import INFINITY

SCHEMA_VERSION = 1

# Orbit values are serialized as decimal strings; the interpreter's default
# int-to-str guard (4300 digits) would truncate that contract.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(20_000_000)


def load_schema() -> dict:
    with resources.files("orbitprimes").joinpath("schema/report.schema.json").open() as fh:
        return json.load(fh)


_SCHEMA_CACHE = None


def _schema():
    global _SCHEMA_CACHE
    if _SCHEMA_CACHE is None:
        _SCHEMA_CACHE = load_schema()
    return _SCHEMA_CACHE


def validate_report(report: dict):
    """Check a report against the shipped schema (envelope plus the per-kind
    required data keys).  Raises InvariantError on any violation."""
    schema = _schema()
    if not isinstance(report, dict):
        raise InvariantError("report must be an object")
    for key in schema["required"]:
        if key not in report:
            raise InvariantError(f"report missing required key {key!r}")
    extra = set(report) - set(schema["properties"])
    if extra:
        raise InvariantError(f"report has unknown keys {sorted(extra)}")
    if report["schema_version"] not in schema["properties"]["schema_version"]["enum"]:
        raise InvariantError("unsupported schema_version")
    kind = report["kind"]
    if kind not in schema["properties"]["kind"]["enum"]:
        raise InvariantError(f"unknown report kind {kind!r}")
    if not isinstance(report["config"], dict) or not isinstance(report["data"], dict):
        raise InvariantError("config and data must be objects")
    for key in schema["x-kind-data-required"].get(kind, ()):
        if key not in report["data"]:
            raise InvariantError(f"{kind} report data missing {key!r}")
    return report


# ---------------------------------------------------------------------------
# Value rendering
# ---------------------------------------------------------------------------

def big(n: int) -> str:
    return str(int(n))


def rational_str(z) -> str:
    if z is INFINITY:
        return "inf"
    z = Fraction(z)
    if z.denominator == 1:
        return str(z.numerator)
    return f"{z.numerator}/{z.denominator}"


def value_str(v) -> str:
    if v is INFINITY:
        return "inf"
    if isinstance(v, FFElement):
        return str(v)
    if isinstance(v, tuple):
        return polys.to_string(list(v), var="t")
    return rational_str(v)


def poly_str(coeffs, var="x") -> str:
    return polys.to_string([Fraction(c) for c in coeffs], var=var)


def factored_dict(fac):
    if fac is None:
        return None
    return {
        "sign": fac.sign,
        "prime_powers": [[big(p), e] for p, e in fac.prime_powers],
        "cofactor": None if fac.cofactor is None else big(fac.cofactor),
        "certified": fac.certified,
    }


def envelope(kind: str, config: dict, data: dict) -> dict:
    report = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "config": config,
        "data": data,
    }
    return validate_report(report)


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_orbit(report, config) -> dict:
    data = {
        "map": report.map_str,
        "alpha": report.alpha_str,
        "field": report.field,
        "values": [
            {"n": rec.n, "value": value_str(rec.value)} for rec in report.records
        ],
        "termination": _termination_dict(report.termination),
    }
    return envelope("orbit", config, data)


def _termination_dict(term):
    out = {"kind": term.kind}
    if term.zero_index is not None:
        out["zero_index"] = term.zero_index
    if term.tail is not None:
        out["tail"] = term.tail
        out["period"] = term.period
    return out


def build_zsigmondy(report, config) -> dict:
    records = []
    for rec in report.records:
        row = {
            "n": rec.n,
            "value": value_str(rec.value),
            "has_primitive": rec.has_primitive,
            "has_squarefree_primitive": rec.has_squarefree_primitive,
            "unresolved": rec.squarefree_unresolved,
        }
        if rec.primitive_part is not None:
            row["primitive_part"] = (
                big(rec.primitive_part)
                if isinstance(rec.primitive_part, int)
                else value_str(rec.primitive_part)
            )
        if rec.squarefree_witness is not None:
            row["squarefree_witness"] = (
                big(rec.squarefree_witness)
                if isinstance(rec.squarefree_witness, int)
                else value_str(rec.squarefree_witness)
            )
        records.append(row)
    notes = report.notes
    notes_dict = None
    if notes is not None:
        notes_dict = {
            "power_map": notes.power_map,
            "zero_in_orbit": notes.zero_in_orbit,
        }
        if notes.classification is not None:
            notes_dict["classification"] = {
                "kind": notes.classification.kind,
                "tail": notes.classification.tail,
                "period": notes.classification.period,
            }
        if notes.ramification is not None:
            notes_dict["ramification"] = {
                "kind": notes.ramification.kind,
                "witness": notes.ramification.witness,
                "cumulative_simple_roots": notes.ramification.cumulative_simple_roots,
                "depth": notes.ramification.depth,
                "threshold": notes.ramification.threshold,
            }
    data = {
        "map": report.map_str,
        "alpha": report.alpha_str,
        "field": report.field,
        "depth": report.depth,
        "squarefree_depth": report.squarefree_depth,
        "records": records,
        "zsigmondy_set": list(report.zsigmondy_set),
        "squarefree_zsigmondy_set": list(report.squarefree_zsigmondy_set),
        "squarefree_unresolved": list(report.squarefree_unresolved),
        "termination": _termination_dict(report.termination),
        "notes": notes_dict,
    }
    return envelope("zsigmondy", config, data)


def build_height(point_str, hv, config) -> dict:
    data = {
        "point": point_str,
        "field": hv.field,
        "value": hv.value,
    }
    if hv.log_arg is not None:
        data["log_arg"] = rational_str(hv.log_arg)
    return envelope("height", config, data)


def build_canonical(map_str, alpha_str, est, config) -> dict:
    data = {
        "map": map_str,
        "alpha": alpha_str,
        "estimate": est.estimate,
        "error_radius": est.error_radius,
        "iterations_used": est.iterations_used,
        "c_phi": est.c_phi,
        "capped": est.capped,
        "preperiodic": est.preperiodic,
    }
    return envelope("canonical-height", config, data)


def build_classify(map_str, alpha_str, cls, config) -> dict:
    data = {
        "map": map_str,
        "alpha": alpha_str,
        "kind": cls.kind,
        "tail": cls.tail,
        "period": cls.period,
        "note": cls.note,
    }
    if cls.height_estimate is not None:
        data["height_estimate"] = cls.height_estimate.estimate
        data["height_error_radius"] = cls.height_estimate.error_radius
    return envelope("classify", config, data)


def build_map_analyze(rmap, bad, verdict, config) -> dict:
    data = {
        "map": rmap.to_string(),
        "degree": rmap.degree,
        "resultant": big(rmap.resultant),
        "bad_reduction": {
            "primes": [big(p) for p in sorted(bad.primes)],
            "unresolved_cofactor": None
            if bad.unresolved_cofactor is None
            else big(bad.unresolved_cofactor),
        },
        "power_map": rmap.is_power_map(),
        "ramification": {
            "kind": verdict.kind,
            "witness": verdict.witness,
            "cumulative_simple_roots": verdict.cumulative_simple_roots,
            "depth": verdict.depth,
            "threshold": verdict.threshold,
        },
    }
    return envelope("map-analyze", config, data)


def build_prop_old(report, config) -> dict:
    rows = []
    for row in report.rows:
        rows.append(
            {
                "n": row.n,
                "mass": row.mass.value,
                "mass_exact": row.mass.exact,
                "mass_radical": big(row.mass.radical),
                "height": row.height,
                "delta_height": row.delta_height,
                "margin": row.margin,
                "ratio": row.ratio,
                "note": row.note,
            }
        )
    data = {
        "map": report.map_str,
        "alpha": report.alpha_str,
        "factor_poly": poly_str(report.factor_poly),
        "level": report.level,
        "delta": report.delta,
        "rows": rows,
        "empirical_constant": report.empirical_constant,
        "hypothesis_ok": report.hypothesis_ok,
        "hypothesis_notes": list(report.hypothesis_notes),
        "screen_is_heuristic": report.screen_is_heuristic,
    }
    return envelope("prop-old", config, data)


def build_abc(triple, config) -> dict:
    data = {
        "a": rational_str(triple.a),
        "b": rational_str(triple.b),
        "c": rational_str(triple.c),
        "height": triple.height.value,
        "height_arg": rational_str(triple.height.log_arg),
        "rad_mass": triple.rad_mass.value,
        "rad_exact": triple.rad_mass.exact,
        "radical": big(triple.rad_mass.radical),
        "quality": triple.quality,
        "quality_is_upper_bound": triple.quality_is_upper_bound,
    }
    return envelope("abc", config, data)


def build_roth(report, config, include_samples: bool = False) -> dict:
    data = {
        "field": report.field,
        "poly": report.poly_str,
        "epsilon": report.epsilon,
        "sample_description": report.sample_description,
        "sample_count": report.sample_count,
        "skipped_count": len(report.skipped),
        "skipped": [value_str(z) for z in report.skipped],
        "min_margin": report.min_margin,
        "argmin": None if report.argmin is None else value_str(report.argmin),
        "empirical_constant": report.empirical_constant,
        "inexact_count": report.inexact_count,
    }
    if include_samples:
        data["samples"] = [
            {
                "z": value_str(s.z),
                "radsum": s.radsum,
                "height": s.height,
                "margin": s.margin,
                "exact": s.exact,
            }
            for s in report.samples
        ]
    return envelope("roth-scan", config, data)


def build_mason(report, config) -> dict:
    data = {
        "a": poly_str(report.a, var="t"),
        "b": poly_str(report.b, var="t"),
        "c": poly_str(report.c, var="t"),
        "max_degree": report.max_degree,
        "radical_degree": report.radical_degree,
        "holds": report.holds,
        "tight": report.tight,
    }
    return envelope("mason", config, data)


def build_galois(records, config) -> dict:
    levels = []
    for rec in records:
        levels.append(
            {
                "n": rec.n,
                "critical_value": big(rec.critical_value),
                "certificate": None if rec.certificate is None else big(rec.certificate),
                "status": rec.status,
                "stoll_guarantee": rec.stoll_guarantee,
                "established": rec.established,
            }
        )
    data = {"a": records[0].a if records else None, "levels": levels}
    return envelope("galois-tower", config, data)


# ---------------------------------------------------------------------------
# Plain-text rendering
# ---------------------------------------------------------------------------

def _flatten(prefix, obj, rows):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}{k}." if prefix else f"{k}.", obj[k], rows)
    elif isinstance(obj, list):
        for idx, item in enumerate(obj):
            _flatten(f"{prefix}{idx}.", item, rows)
    else:
        rows.append((prefix[:-1], obj))


def to_table(report: dict) -> str:
    rows = []
    _flatten("", report, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def to_csv(report: dict) -> str:
    """CSV of the most tabular part of the report; falls back to key,value."""
    data = report.get("data", {})
    for key in ("samples", "rows", "records", "levels", "values"):
        table = data.get(key)
        if isinstance(table, list) and table and isinstance(table[0], dict):
            cols = sorted({c for row in table for c in row})
            out = [",".join(cols)]
            for row in table:
                out.append(",".join(_csv_cell(row.get(c)) for c in cols))
            return "\n".join(out)
    rows = []
    _flatten("", report, rows)
    return "\n".join(f"{k},{_csv_cell(v)}" for k, v in rows)


def _csv_cell(v):
    if v is None:
        return ""
    s = str(v)
    if "," in s or '"' in s or "\n" in s:
        s = '"' + s.replace('"', '""') + '"'
    return s
