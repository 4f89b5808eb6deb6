import json

import pytest

from liederive import io
from liederive.algebra import direct_sum
from liederive.builders import almost_abelian, heisenberg, sl2, sl2_module_extension, two_dim_nonabelian
from liederive.fields import GF, QQ
from liederive.integrability import is_derived_algebra
from liederive.rings import RING_FIXTURES


@pytest.mark.parametrize("L", [sl2(), heisenberg(2, GF(3)), sl2_module_extension(2),
                               almost_abelian(4, GF(2)), direct_sum(sl2(), two_dim_nonabelian())])
def test_algebra_roundtrip(L):
    doc = json.loads(io.dumps(io.algebra_to_json(L)))
    M = io.algebra_from_json(doc)
    assert M.c == L.c and M.labels == L.labels and M.field == L.field


def _doc():
    return io.algebra_to_json(sl2())


def test_rejects_bad_documents():
    d = _doc()
    d["brackets"][0]["terms"][0][1] = "5/1"
    with pytest.raises(io.FormatError, match="Jacobi violation at"):
        io.algebra_from_json(d)
    d = _doc()
    d["brackets"].append(dict(d["brackets"][0]))
    with pytest.raises(io.FormatError, match="twice"):
        io.algebra_from_json(d)
    d = _doc()
    d["brackets"][0]["i"], d["brackets"][0]["j"] = d["brackets"][0]["j"], d["brackets"][0]["i"]
    with pytest.raises(io.FormatError, match="i < j"):
        io.algebra_from_json(d)
    d = _doc()
    d["field"] = {"kind": "GF", "p": 6}
    with pytest.raises(io.FormatError, match="field"):
        io.algebra_from_json(d)
    d = _doc()
    d["brackets"][0]["terms"][0][1] = "one"
    with pytest.raises(io.FormatError, match="scalar"):
        io.algebra_from_json(d)
    d = _doc()
    d["labels"] = ["a"]
    with pytest.raises(io.FormatError, match="labels"):
        io.algebra_from_json(d)
    with pytest.raises(io.FormatError):
        io.algebra_from_json([1, 2])


def test_assoc_roundtrip_and_separation():
    R = RING_FIXTURES["upper3"](GF(3))
    doc = io.assoc_to_json(R)
    S = io.assoc_from_json(json.loads(io.dumps(doc)))
    assert S.m == R.m and S.unit == R.unit
    with pytest.raises(io.FormatError, match="associative"):
        io.algebra_from_json(doc)
    with pytest.raises(io.FormatError):
        io.assoc_from_json(_doc())


@pytest.mark.parametrize("L", [heisenberg(1), almost_abelian(4, GF(3)), direct_sum(sl2(), heisenberg(1))])
def test_certificate_roundtrip(L):
    cert = is_derived_algebra(L).certificate
    doc = json.loads(io.dumps(io.certificate_to_json(cert)))
    back = io.certificate_from_json(doc)
    assert back.verify() and back.method == cert.method and doc["anchor"]


def test_certificate_rejects_unknown_method():
    doc = io.certificate_to_json(is_derived_algebra(heisenberg(1)).certificate)
    doc["method"] = "guess"
    with pytest.raises(io.FormatError):
        io.certificate_from_json(doc)


def test_dumps_is_canonical():
    a = io.dumps({"b": 1, "a": [1, 2]})
    assert a == io.dumps({"a": [1, 2], "b": 1}) and a.endswith("\n")
    assert io.digest(b"x").startswith("sha256:")
