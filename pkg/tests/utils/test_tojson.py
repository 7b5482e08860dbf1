# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring,redefined-outer-name

import json
import numpy as np
from sopcast.utils import tojson, struct

class Serializable(tojson.JSONSerializer):
    """Test class for JSONSerializer"""

    _json_public_ = "name bands status vector".split()
    _json_mod_map_ = dict(
        conv_val=lambda x: "%12.2f"%x
    )

    def __init__(self):
        self.name = "test_serializer"
        self.bands = ["D%d"%(d+1) for d in range(5)]
        self.status = struct.Struct(
            trained=True,
            converged=False,
        )
        self.vector = np.arange(10)
        self.conv_val = 1234.87122

def test_to_json():
    obj = Serializable()
    val = obj.to_json()
    keys = "name bands status vector conv_val".split()
    dtypes = struct.Struct(
        name=str,
        bands=list,
        status=struct.Struct,
        vector=np.ndarray,
        conv_val=str)
    for k in val.keys():
        assert k in keys
    for key, dtyp in dtypes.items():
        assert isinstance(val[key], dtyp)

def test_encode():
    obj = Serializable()
    json_obj = obj.encode()
    dobj = json.loads(json_obj)
    assert dobj["name"] == "test_serializer"
    assert len(dobj["bands"]) == 5
    assert not dobj["status"]["converged"]
    assert dobj["vector"] == list(range(10))
    assert dobj["conv_val"] == "     1234.87"

def test_numpy_scalars():
    doc = dict(i=np.int64(3), f=np.float64(0.1), b=np.bool_(True))
    out = json.loads(json.dumps(doc, cls=tojson.SopcastJsonEncoder))
    assert out == dict(i=3, f=0.1, b=True)

def test_write_read(tmpdir):
    obj = Serializable()
    fname = str(tmpdir.join("obj.json"))
    obj.write_json(fname)
    first = open(fname, "rb").read()
    obj.write_json(fname)
    assert open(fname, "rb").read() == first
    assert first.endswith(b"}\n")
    doc = tojson.read_json(fname)
    assert doc["bands"][-1] == "D5"

def test_float_round_trip():
    """Floats survive encoding bit for bit"""
    vals = np.random.default_rng(3).normal(size=50)
    back = json.loads(json.dumps(vals, cls=tojson.SopcastJsonEncoder))
    assert np.array_equal(np.array(back), vals)
