"""JSON encoding and decoding for fields, matrices, subspaces and reports.

Wire formats:

* field: ``{"kind": "rationals"}`` or ``{"kind": "finite", "p": 2,
  "k": 2, "modulus": [1, 1, 1]}`` (modulus optional on input; the
  deterministic default is chosen when absent);
* matrix: ``{"field": {...}, "rows": [[...], ...]}`` with entries being
  integers (GF(p) residues), coefficient lists (GF(p^k)), or integers /
  "a/b" strings for the rationals;
* subspace: list of basis rows;
* lattice report / oracle report: plain dicts assembled here, stable
  under ``json.dumps(sort_keys=True)``.
"""

from fractions import Fraction

from .fields import QQ, ExtensionField, FiniteField
from .matrix import Matrix
from .poly import format_poly, parse_poly
from .subspace import build_lattice, span, subspace_label

__all__ = [
    "field_to_json",
    "field_from_json",
    "entry_to_json",
    "matrix_to_json",
    "matrix_from_json",
    "subspace_to_json",
    "subspace_from_json",
    "lattice_to_json",
    "lattice_from_json",
    "lattice_report_to_json",
    "oracle_report_to_json",
]


def field_to_json(field):
    if field == QQ:
        return {"kind": "rationals"}
    if isinstance(field, FiniteField):
        return {"kind": "finite", "p": field.p, "k": field.k, "modulus": list(field.modulus)}
    if isinstance(field, ExtensionField):
        return {"kind": "extension", "modulus": [str(c) for c in field.modulus]}
    raise TypeError(f"cannot serialize field {field!r}")


def field_from_json(obj):
    kind = obj.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "finite":
        p = int(obj["p"])
        k = int(obj.get("k", 1))
        modulus = obj.get("modulus")
        return FiniteField(p, k, modulus=tuple(modulus) if modulus else None)
    if kind == "extension":
        return ExtensionField(tuple(Fraction(c) for c in obj["modulus"]))
    raise ValueError(f"unknown field kind {kind!r}")


def entry_to_json(field, e):
    if field == QQ:
        return e.numerator if e.denominator == 1 else str(e)
    if isinstance(field, FiniteField):
        return e.c[0] if field.k == 1 else list(e.c)
    if isinstance(field, ExtensionField):
        return [str(c) for c in e.c]
    raise TypeError(f"cannot serialize entries of {field!r}")


def _entry_from_json(field, v):
    if isinstance(v, list):
        return field.element(v)
    return field.element(v)


def matrix_to_json(M):
    return {
        "field": field_to_json(M.field),
        "rows": [[entry_to_json(M.field, e) for e in row] for row in M.rows],
    }


def matrix_from_json(obj, field=None):
    if field is None:
        if "field" not in obj:
            raise ValueError("matrix JSON lacks a field and none was supplied")
        field = field_from_json(obj["field"])
    rows = obj["rows"]
    return Matrix(field, [[_entry_from_json(field, v) for v in row] for row in rows])


def subspace_to_json(W):
    return [[entry_to_json(W.field, e) for e in row] for row in W.basis]


def subspace_from_json(rows, field, n):
    return span([[_entry_from_json(field, v) for v in row] for row in rows], field, n)


def lattice_to_json(lat, field, n):
    members = []
    for i, w in enumerate(lat.members):
        rec = {
            "dim": w.dim,
            "basis": subspace_to_json(w),
            "label": subspace_label(w),
        }
        if lat.flags is not None:
            rec["flag"] = lat.flags[i]
        members.append(rec)
    return {
        "field": field_to_json(field),
        "ambient_dim": n,
        "members": members,
        "hasse_edges": [list(e) for e in lat.covers],
    }


def lattice_from_json(obj):
    field = field_from_json(obj["field"])
    n = int(obj["ambient_dim"])
    members = [subspace_from_json(rec["basis"], field, n) for rec in obj["members"]]
    flags = None
    if any("flag" in rec for rec in obj["members"]):
        flags = {
            subspace_from_json(rec["basis"], field, n): rec.get("flag", "")
            for rec in obj["members"]
        }
    return build_lattice(members, flags=flags)


def _component_meta_json(meta):
    out = dict(meta)
    out["segre_k"] = list(meta["segre_k"])
    out["segre_f"] = list(meta["segre_f"])
    return out


def lattice_report_to_json(report, field, n):
    members = []
    for i, w in enumerate(report.members):
        rec = {"dim": w.dim, "basis": subspace_to_json(w), "label": subspace_label(w)}
        if report.member_flags is not None:
            rec["flag"] = report.member_flags[i]
        members.append(rec)
    return {
        "kind": report.kind,
        "finite": report.finite,
        "complete": report.complete,
        "members": members,
        "lattice": lattice_to_json(report.lattice, field, n) if report.lattice else None,
        "member_count": len(report.members),
        "components": [_component_meta_json(m) for m in report.components],
        "provenance": list(report.provenance),
        "notes": list(report.notes),
    }


def oracle_report_to_json(rep):
    field = rep.matrix.field
    return {
        "matrix": matrix_to_json(rep.matrix),
        "counts": rep.counts(),
        "invariant": [subspace_label(w) for w in rep.invariant],
        "hyperinvariant": [subspace_to_json(w) for w in rep.hyperinvariant],
        "characteristic": [subspace_to_json(w) for w in rep.characteristic],
        "centralizer_dim": rep.centralizer_dim,
        "unit_mode": rep.unit_mode,
        "units_tested": rep.units_tested,
        "findings": list(rep.findings),
    }


def poly_to_json(f):
    return format_poly(f)


def hint_from_json(obj, field):
    """[["x^2+1", 2], ...] -> [(Poly, int), ...]"""
    out = []
    for item in obj:
        text, mult = item
        out.append((parse_poly(text, field), int(mult)))
    return out
