"""JSON (de)serialisation of certificates.

Each file embeds the field descriptor, so a verifier rebuilds the field from
the file alone and re-checks every claim without repeating any search.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import CertificateError
from .field import Elt, FieldCtx, make_extension
from .normgraph import BicliqueCert, NGGraph, verify_biclique
from .normsys import VERIFIER_VERSION, SixSolutionCert, verify_six_cert
from .tower import TowerCtx


def elt_json(x: Elt) -> dict:
    return {"power": x.log() if x else None, "coords": list(x.coords)}


def _jsonable(v: Any):
    if isinstance(v, Elt):
        return elt_json(v)
    if isinstance(v, dict):
        return {k: _jsonable(w) for k, w in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(w) for w in v]
    return v


def field_from_descriptor(d: dict) -> FieldCtx:
    try:
        F = make_extension(d["p"], d["n"], tuple(d["modulus"]))
    except KeyError as exc:
        raise CertificateError(f"field descriptor misses {exc}") from exc
    if list(F.coords(F.primitive_code)) != list(d["primitive"]):
        raise CertificateError("recorded primitive element differs from the rebuilt field")
    return F


def elt_from_json(F: FieldCtx, d: dict) -> Elt:
    x = F(list(d["coords"]))
    if d.get("power") is not None and F.gen_power(d["power"]) != x:
        raise CertificateError(f"power {d['power']} does not match coordinates {d['coords']}")
    return x


# ---------------------------------------------------------------------------


def six_to_json(cert: SixSolutionCert) -> dict:
    return {
        "kind": "six-solution",
        "q": cert.q,
        "t": cert.tower.t,
        "field": cert.tower.ambient.descriptor(),
        "A": elt_json(cert.A),
        "solutions": [elt_json(y) for y in cert.solutions],
        "membership": list(cert.tags),
        "decompositions": [[elt_json(b), elt_json(c)] for b, c in cert.decompositions],
        "method": cert.method,
        "info": _jsonable(cert.info),
        "verifier_version": VERIFIER_VERSION,
    }


def six_from_json(d: dict) -> SixSolutionCert:
    F = field_from_descriptor(d["field"])
    tc = TowerCtx(F, d["q"], d.get("t", 3))
    e = lambda x: elt_from_json(F, x)
    return SixSolutionCert(
        tc, e(d["A"]), [e(y) for y in d["solutions"]], list(d["membership"]),
        [(e(b), e(c)) for b, c in d["decompositions"]], d.get("method", "file"), d.get("info", {}),
    )


def _vertex_json(v) -> list:
    return [list(v[0].coords), list(v[1].coords)]


def biclique_to_json(cert: BicliqueCert) -> dict:
    g = cert.graph
    return {
        "kind": "biclique",
        "q": g.q,
        "t": g.t,
        "field": g.F.descriptor(),
        "left": [_vertex_json(v) for v in cert.left],
        "right": [_vertex_json(v) for v in cert.right],
        "construction": _jsonable(cert.construction),
        "verified": True,
        "verifier_version": VERIFIER_VERSION,
    }


def biclique_from_json(d: dict) -> BicliqueCert:
    F = field_from_descriptor(d["field"])
    g = NGGraph(d["q"], d["t"])
    if g.F.descriptor() != F.descriptor():
        # the vertices are given in coordinates, so a different modulus needs its own graph
        raise CertificateError("certificate field differs from the default field for this graph")
    F = g.F
    vert = lambda v: (F(list(v[0])), F(list(v[1])))
    return BicliqueCert(g, [vert(v) for v in d["left"]], [vert(v) for v in d["right"]],
                        d.get("construction", {}))


def verify_json(d: dict, *, full_scan: bool = True) -> dict:
    """Verify a certificate dict; returns a small report or raises."""
    kind = d.get("kind")
    if kind == "six-solution":
        cert = six_from_json(d)
        verify_six_cert(cert, full_scan=full_scan)
        return {"kind": kind, "q": cert.q, "ok": True}
    if kind == "biclique":
        cert = biclique_from_json(d)
        if len(cert.left) != 4 or len(cert.right) != 6:
            raise CertificateError("a K4,6 certificate needs 4 left and 6 right vertices")
        verify_biclique(cert)
        return {"kind": kind, "q": d["q"], "t": d["t"], "ok": True}
    if kind == "difference-set":
        from .diffsets import group_of, verify_difference_set

        F = field_from_descriptor(d["field"])
        tc = TowerCtx(F, d["q"], d["t"])
        D = [elt_from_json(F, x) for x in d["members"]]
        res = verify_difference_set(group_of(tc), D, d["lambda"])
        return {"kind": kind, "q": d["q"], "t": d["t"], "ok": res.ok}
    raise CertificateError(f"unknown certificate kind {kind!r}")


def dumps(d: dict) -> str:
    return json.dumps(d, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
