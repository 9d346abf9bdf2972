"""Canonical JSON for matroids, edge sets, coefficients, graphs and certificates.

Every ``*_to_json`` emits plain dicts with sorted members, so dumping with
``dumps`` gives byte-identical output for equal objects.
"""

from __future__ import annotations

import json

from .constructions import Check, CountingRow, CoverWitness, WildnessCertificate
from .core import FiniteMatroid
from .fields import QQ, field_by_name
from .graphs import FiniteGraph
from .periodic import EdgeSet, edge_sort_key, family_by_name, format_edge, parse_edge
from .thinsums import PeriodicValue, ThinCoefficients


class FormatError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _need(obj, key: str, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise FormatError(f"field {key!r} has the wrong type")
    return value


# -- matroids ---------------------------------------------------------------


def matroid_to_json(m: FiniteMatroid) -> dict:
    bases = sorted(sorted(str(x) for x in b) for b in m.bases.as_lists())
    return {"ground": [str(x) for x in m.ground], "bases": bases}


def matroid_from_json(obj, check: bool = True) -> FiniteMatroid:
    ground = _need(obj, "ground", list)
    bases = _need(obj, "bases", list)
    if not all(isinstance(x, str) for x in ground):
        raise FormatError("ground labels must be strings")
    if not all(isinstance(b, list) and all(isinstance(x, str) for x in b) for b in bases):
        raise FormatError("bases must be lists of labels")
    return FiniteMatroid.from_bases(ground, bases, check=check)


def family_to_json(ground, members) -> dict:
    return {"ground": [str(x) for x in ground], "sets": sorted(sorted(str(x) for x in s) for s in members)}


# -- eventually periodic edge sets --------------------------------------------


def edgeset_to_json(s: EdgeSet) -> dict:
    return {
        "family": s.family.name,
        "exceptional": [format_edge(e) for e in sorted(s.exceptional, key=edge_sort_key)],
        "onset": s.onset,
        "period": s.period,
        "pattern": [[slot, r] for slot, r in sorted(s.pattern)],
    }


def edgeset_from_json(obj) -> EdgeSet:
    try:
        fam = family_by_name(_need(obj, "family", str))
        exc = frozenset(parse_edge(x) for x in _need(obj, "exceptional", list))
        pattern = frozenset((slot, int(r)) for slot, r in _need(obj, "pattern", list))
        return EdgeSet(fam, exc, _need(obj, "onset", int), _need(obj, "period", int), pattern)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad edge set: {exc}") from exc


# -- thin coefficients ------------------------------------------------------


def coefficients_to_json(lam: ThinCoefficients) -> dict:
    fmt = lam.field.format
    explicit = {format_edge(e): fmt(v) for e, v in sorted(lam.explicit.items(), key=lambda kv: edge_sort_key(kv[0]))}
    periodic = [
        {"slot": pv.slot, "residue": pv.residue, "onset": pv.onset, "value": fmt(pv.value)}
        for pv in sorted(lam.periodic, key=lambda pv: (pv.slot, pv.residue))
    ]
    return {"explicit": explicit, "periodic": periodic, "period": lam.period, "field": lam.field.name}


def coefficients_from_json(obj) -> ThinCoefficients:
    try:
        fld = field_by_name(obj.get("field", "QQ")) if isinstance(obj, dict) else QQ
        explicit = {parse_edge(k): fld.parse(v) for k, v in _need(obj, "explicit", dict).items()}
        periodic = tuple(
            PeriodicValue(str(x["slot"]), int(x["residue"]), int(x["onset"]), fld.parse(x["value"]))
            for x in _need(obj, "periodic", list)
        )
        return ThinCoefficients(explicit, periodic, int(obj.get("period", 1)), fld)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad coefficients: {exc}") from exc


# -- finite graphs ------------------------------------------------------------


def graph_to_json(g: FiniteGraph) -> dict:
    return {"vertices": [str(v) for v in g.vertices], "edges": [[str(e), str(u), str(v)] for e, u, v in g.edges]}


def graph_from_json(obj) -> FiniteGraph:
    verts = _need(obj, "vertices", list)
    edges = _need(obj, "edges", list)
    try:
        return FiniteGraph(tuple(str(v) for v in verts), tuple((str(e), str(u), str(v)) for e, u, v in edges))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad graph: {exc}") from exc


# -- certificates -------------------------------------------------------------


def certificate_to_json(cert: WildnessCertificate) -> dict:
    return {
        "construction": cert.construction,
        "family": cert.family,
        "verdict": cert.verdict,
        "circuit": edgeset_to_json(cert.circuit),
        "cocircuit": edgeset_to_json(cert.cocircuit),
        "supporting": {k: edgeset_to_json(v) for k, v in sorted(cert.supporting.items())},
        "covers": [
            {"e": format_edge(w.e), "first": edgeset_to_json(w.first), "second": edgeset_to_json(w.second)}
            for w in cert.covers
        ],
        "counting": [[r.n, r.lhs, r.rhs, r.two_edges_uncoverable] for r in cert.counting],
        "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in cert.checks],
        "notes": list(cert.notes),
        "tool_version": cert.tool_version,
        "procedures": dict(sorted(cert.procedures.items())),
    }


def certificate_from_json(obj) -> WildnessCertificate:
    try:
        return WildnessCertificate(
            construction=_need(obj, "construction", str),
            family=_need(obj, "family", str),
            circuit=edgeset_from_json(_need(obj, "circuit", dict)),
            cocircuit=edgeset_from_json(_need(obj, "cocircuit", dict)),
            supporting={k: edgeset_from_json(v) for k, v in _need(obj, "supporting", dict).items()},
            covers=tuple(
                CoverWitness(parse_edge(w["e"]), edgeset_from_json(w["first"]), edgeset_from_json(w["second"]))
                for w in _need(obj, "covers", list)
            ),
            counting=tuple(CountingRow(int(n), int(a), int(b), bool(ok)) for n, a, b, ok in _need(obj, "counting", list)),
            checks=tuple(Check(c["name"], bool(c["ok"]), c.get("detail", "")) for c in _need(obj, "checks", list)),
            notes=tuple(_need(obj, "notes", list)),
            tool_version=_need(obj, "tool_version", str),
            procedures=dict(_need(obj, "procedures", dict)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad certificate: {exc}") from exc
