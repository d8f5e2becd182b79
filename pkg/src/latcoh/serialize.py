"""Deterministic serialization of contexts and verification reports.

One canonical UTF-8 JSON document per context: sorted keys, compact
separators, every integer payload rendered as a decimal string so the
format carries arbitrary precision.  The document fingerprint is the
SHA-256 of the canonical bytes.  Deserialization rebuilds the context
from its defining parameters and then insists that every serialized
table matches the rebuilt one bit for bit, so a loaded context is
exactly the stored one.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional

from .construction import Context, build_context

CONTEXT_FORMAT = "latcoh-context-v1"
REPORT_FORMAT = "latcoh-report-v1"

# full twisting tables stay readable at the default prime; above that the
# document keeps only the defining component tables
_OMEGA_TABLE_LIMIT = 3


def _ints(seq) -> list:
    out = []
    for v in seq:
        if isinstance(v, (list, tuple)):
            out.append(_ints(v))
        else:
            out.append(str(int(v)))
    return out


def _matrix(m) -> list:
    if hasattr(m, "entries"):
        return _ints(m.entries)
    return _ints(m.tolist() if hasattr(m, "tolist") else m)


def _lattice_doc(lat) -> dict:
    return {
        "rank": str(lat.rank),
        "labels": list(lat.labels),
        "summands": [[name, str(off), str(rk)] for name, off, rk in lat.summands],
        "actions": [_matrix(lat.action(i)) for i in range(lat.group.rank)],
    }


def context_to_doc(ctx: Context) -> dict:
    doc = {
        "format": CONTEXT_FORMAT,
        "p": str(ctx.p),
        "flags": {
            "multiset_family": ctx.multiset_family,
            "alt_u12_sign": ctx.alt_u12_sign,
            "omega_terms": _ints(ctx.omega_terms),
        },
        "group": {"p": str(ctx.p), "rank": "4"},
        "relation_module": {
            "sign": str(ctx.a2.sign),
            "basis": _matrix(ctx.a2.module.basis),
            "u12": _ints(ctx.a2.u12.coords),
            "b1": _ints(ctx.a2.b1.coords),
            "b2": _ints(ctx.a2.b2.coords),
        },
        "lattices": {
            "a2": _lattice_doc(ctx.a2.lattice),
            "k": _lattice_doc(ctx.k_lattice),
            "q": _lattice_doc(ctx.q),
            "m_omega": _lattice_doc(ctx.m_omega),
            "m": _lattice_doc(ctx.m),
        },
        "cocycles": {
            "c12": _ints(ctx.c12.values.tolist()),
            "carry": _ints(ctx.c3.values.tolist()),
        },
        "family": [
            {
                "subgroup": _ints([b.exps for b in member.subgroup.basis]),
                "tau": _ints(member.tau.exps) if member.tau is not None else None,
                "res_order": str(member.res_order),
                "transversal": _ints([g.exps for g in member.transversal]),
                "cochain": _ints(member.cochain.values.tolist()),
            }
            for member in ctx.family
        ],
        "embeddings": {
            "u12_m": _ints(ctx.u12_m.coords),
            "b1_m": _ints(ctx.b1_m.coords),
            "b2_m": _ints(ctx.b2_m.coords),
        },
    }
    if ctx.p <= _OMEGA_TABLE_LIMIT:
        doc["cocycles"]["omega"] = _ints(ctx.omega.values.tolist())
    return doc


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True) + "\n"


def fingerprint(doc: dict) -> str:
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()


def write_context(ctx: Context, path: str) -> str:
    doc = context_to_doc(ctx)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(doc))
    return fingerprint(doc)


def context_from_doc(doc: dict, check: Optional[str] = None) -> Context:
    """Rebuild the context a document describes, verifying bit-exactness.

    The document's defining parameters drive a fresh deterministic build;
    every serialized action matrix and cocycle table must then agree with
    the rebuilt context exactly, otherwise the document is rejected.
    """
    if doc.get("format") != CONTEXT_FORMAT:
        raise ValueError("not a context document")
    p = int(doc["p"])
    flags = doc["flags"]
    ctx = build_context(
        p,
        multiset_family=bool(flags["multiset_family"]),
        alt_u12_sign=bool(flags["alt_u12_sign"]),
        omega_terms=tuple(int(t) for t in flags["omega_terms"]),
        check=check or ("full" if p <= _OMEGA_TABLE_LIMIT else "light"),
    )
    rebuilt = context_to_doc(ctx)
    if rebuilt != doc:
        raise ValueError("context document does not match its deterministic rebuild")
    return ctx


def read_context(path: str) -> Context:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return context_from_doc(doc)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def report_doc(config: dict, context_fp: str, results) -> dict:
    """Canonical report payload; timings are deliberately excluded so the
    bytes do not depend on load or parallelism."""
    return {
        "format": REPORT_FORMAT,
        "config": {k: config[k] for k in sorted(config)},
        "context_fingerprint": context_fp,
        "results": [
            {
                "id": r.check_id,
                "alias": r.alias,
                "title": r.title,
                "status": "pass" if r.passed else "fail",
                "details": r.details,
            }
            for r in results
        ],
        "summary": {
            "total": str(len(results)),
            "passed": str(sum(1 for r in results if r.passed)),
            "failed": str(sum(1 for r in results if not r.passed)),
        },
    }


def _json_safe(value):
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if hasattr(value, "item") and not isinstance(value, str):  # numpy scalars
        return str(value.item())
    return value


def report_json(config: dict, context_fp: str, results) -> str:
    doc = report_doc(config, context_fp, results)
    return canonical_json(_json_safe(doc))


def report_markdown(config: dict, context_fp: str, results) -> str:
    lines = ["# Verification report", ""]
    lines.append(f"- context fingerprint: `{context_fp}`")
    for key in sorted(config):
        lines.append(f"- {key}: `{config[key]}`")
    lines.append("")
    lines.append("| check | alias | status |")
    lines.append("|---|---|---|")
    for r in results:
        lines.append(f"| {r.check_id} | {r.alias} | "
                     f"{'pass' if r.passed else 'FAIL'} |")
    lines.append("")
    for r in results:
        lines.append(f"## {r.check_id}")
        lines.append("")
        lines.append(r.title + ".")
        details = _json_safe(r.details)
        body = json.dumps(details, sort_keys=True, indent=2)
        if len(body) > 4000:
            trimmed = {k: v for k, v in details.items()
                       if not isinstance(v, list) or len(json.dumps(v)) < 2000}
            trimmed["omitted"] = sorted(set(details) - set(trimmed))
            body = json.dumps(trimmed, sort_keys=True, indent=2)
        lines.append("")
        lines.append("```json")
        lines.append(body)
        lines.append("```")
        lines.append("")
    return "\n".join(lines) + "\n"
