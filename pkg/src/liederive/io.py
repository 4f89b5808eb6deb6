"""JSON interchange for algebras, associative algebras, certificates and reports."""

from __future__ import annotations

import hashlib
import json

from .algebra import LieAlgebra, validate
from .fields import FieldSpec
from .rings import AssocAlgebra, validate_assoc


class FormatError(ValueError):
    """Malformed or invalid input file."""


def _field_from(doc) -> FieldSpec:
    try:
        return FieldSpec.from_json(doc["field"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad or missing field: {exc}") from None


def _parse_terms(F, terms, where):
    out = {}
    for t in terms:
        if not (isinstance(t, (list, tuple)) and len(t) == 2):
            raise FormatError(f"{where}: each term must be [index, scalar]")
        k, v = t
        try:
            out[int(k)] = out.get(int(k), F.zero) + F.parse(str(v))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"{where}: bad scalar {v!r}: {exc}") from None
    return out


def algebra_to_json(L: LieAlgebra) -> dict:
    F = L.field
    brackets = []
    for (i, j), terms in sorted(L.brackets().items()):
        brackets.append({"i": i, "j": j,
                         "terms": [[k, F.format(v)] for k, v in sorted(terms.items())]})
    return {"field": F.to_json(), "dim": L.dim, "labels": list(L.labels), "brackets": brackets}


def algebra_from_json(doc, check: bool = True) -> LieAlgebra:
    if not isinstance(doc, dict):
        raise FormatError("algebra file must be a JSON object")
    if doc.get("assoc"):
        raise FormatError("this is an associative algebra file (\"assoc\": true)")
    F = _field_from(doc)
    try:
        n = int(doc["dim"])
    except (KeyError, TypeError, ValueError):
        raise FormatError("missing or bad \"dim\"") from None
    if n < 0:
        raise FormatError("dimension must be non-negative")
    labels = doc.get("labels")
    if labels is not None and len(labels) != n:
        raise FormatError(f"{len(labels)} labels for dimension {n}")
    brackets = {}
    for b in doc.get("brackets", []):
        try:
            i, j = int(b["i"]), int(b["j"])
        except (KeyError, TypeError, ValueError):
            raise FormatError("bracket entries need integer \"i\" and \"j\"") from None
        if not (0 <= i < j < n):
            raise FormatError(f"bracket ({i},{j}): need 0 <= i < j < dim")
        if (i, j) in brackets:
            raise FormatError(f"bracket ({i},{j}) listed twice")
        terms = _parse_terms(F, b.get("terms", []), f"bracket ({i},{j})")
        if any(not (0 <= k < n) for k in terms):
            raise FormatError(f"bracket ({i},{j}): term index out of range")
        brackets[(i, j)] = terms
    L = LieAlgebra.from_brackets(F, n, brackets, labels)
    if check:
        v = validate(L)
        if not v:
            raise FormatError(v.message())
    return L


def assoc_to_json(R: AssocAlgebra) -> dict:
    F = R.field
    prods = [{"i": i, "j": j, "terms": [[k, F.format(v)] for k, v in sorted(t.items())]}
             for (i, j), t in sorted(R.products().items())]
    doc = {"assoc": True, "field": F.to_json(), "dim": R.dim, "labels": list(R.labels),
           "brackets": prods}
    if R.unit is not None:
        doc["unit"] = [F.format(x) for x in R.unit]
    return doc


def assoc_from_json(doc, check: bool = True) -> AssocAlgebra:
    if not isinstance(doc, dict) or not doc.get("assoc"):
        raise FormatError("associative algebra files need \"assoc\": true")
    F = _field_from(doc)
    n = int(doc["dim"])
    prods = {}
    for b in doc.get("brackets", []):
        i, j = int(b["i"]), int(b["j"])
        if not (0 <= i < n and 0 <= j < n):
            raise FormatError(f"product ({i},{j}) out of range")
        prods[(i, j)] = _parse_terms(F, b.get("terms", []), f"product ({i},{j})")
    unit = doc.get("unit")
    if unit is not None:
        if len(unit) != n:
            raise FormatError("unit has the wrong length")
        unit = [F.parse(str(x)) for x in unit]
    R = AssocAlgebra.from_products(F, n, prods, doc.get("labels"), unit)
    if check:
        v = validate_assoc(R)
        if not v:
            raise FormatError(v.message())
    return R


def matrix_to_json(M, F: FieldSpec):
    return [[F.format(x) for x in row] for row in M]


def matrix_from_json(rows, F: FieldSpec):
    return [[F.parse(str(x)) for x in row] for row in rows]


def certificate_to_json(cert) -> dict:
    F = cert.L.field
    doc = {
        "kind": "integral-certificate",
        "method": cert.method,
        "anchor": cert.anchor,
        "L": algebra_to_json(cert.L),
        "H": algebra_to_json(cert.H),
        "embedding": matrix_to_json(cert.embedding, F),
        "replay": "liederive verify <this file>: checks the embedding is an injective "
                  "homomorphism onto [H, H]",
    }
    if cert.derivation is not None:
        doc["derivation"] = matrix_to_json(cert.derivation, F)
    if cert.components:
        doc["components"] = list(cert.components)
    for key in ("f1", "f2"):
        if key in cert.extra:
            doc[key] = matrix_to_json(cert.extra[key], F)
    return doc


def certificate_from_json(doc):
    from .integrability import IntegralCertificate, ANCHORS
    if not isinstance(doc, dict) or doc.get("kind") != "integral-certificate":
        raise FormatError("not an integral certificate")
    if doc.get("method") not in ANCHORS:
        raise FormatError(f"unknown method {doc.get('method')!r}")
    L = algebra_from_json(doc["L"])
    H = algebra_from_json(doc["H"])
    F = L.field
    emb = matrix_from_json(doc["embedding"], F)
    extra = {k: matrix_from_json(doc[k], F) for k in ("f1", "f2") if k in doc}
    D = matrix_from_json(doc["derivation"], F) if "derivation" in doc else None
    return IntegralCertificate(L, H, emb, doc["method"], derivation=D, extra=extra,
                               components=list(doc.get("components", [])))


def dumps(doc) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def load_json(path: str):
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        return json.loads(raw), raw
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None


def write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
