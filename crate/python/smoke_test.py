#!/usr/bin/env python3
"""Import the built dioph_py extension and spot-check every entry point."""

import json
import os
import shutil
import sys
import tempfile


def find_library():
    explicit = os.environ.get("DIOPH_PY_LIB")
    if explicit:
        return explicit
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    for profile in ("debug", "release"):
        cand = os.path.join(root, "target", profile, "libdioph_py.so")
        if os.path.exists(cand):
            return cand
    sys.exit("libdioph_py.so not found; run `cargo build -p dioph-py` first")


def load_module(lib):
    tmp = tempfile.mkdtemp(prefix="dioph_py.")
    shutil.copy(lib, os.path.join(tmp, "dioph_py.so"))
    sys.path.insert(0, tmp)
    import dioph_py

    return dioph_py


def main():
    m = load_module(find_library())
    assert m.__version__

    doc = json.loads(m.solve_json("2x^2 - 3y^2 = 5"))
    assert doc["classification"] == "infinite-family-candidate"
    fams = doc["result"]["families"]
    assert fams[0]["matrix"] == [["5", "6"], ["4", "5"]]
    assert fams[0]["seed"] == ["2", "1"]
    assert doc["status"] == 0

    doc = json.loads(m.solve_json("x^2 + y^2 + 1 = 0"))
    assert doc["result"]["kind"] == "empty"
    assert doc["result"]["certificate"]["type"] == "sign-argument"
    assert doc["status"] == 0

    doc = json.loads(m.solve_json("x^2 - 4y^2 + 3 = 0", positive=True))
    assert doc["result"]["kind"] == "finite"
    assert doc["result"]["points"] == [["1", "1"]]

    assert "infinite-family-candidate" in m.classify_text("x^2 - 3y^2 - 4 = 0")

    text = m.reduce_text("9x^2 + 6xy - 13y^2 - 6x - 16y + 20 = 0")
    assert "canonical form: 2u^2 - 7v^2 + 45 = 0" in text
    assert "inverse map: x = (2u - v + 3)/6, y = (v - 1)/2" in text
    assert "canonical automorphism: [[15, 28], [8, 15]]" in text

    text = m.closed_form_text("x^2 - 3y^2 - 4 = 0")
    assert "lambda = 2 + √3" in text

    doc = json.loads(m.oracle_json("x^2 - 3y^2 - 4 = 0", 60))
    assert doc["classification"] == "oracle-box-enumeration"
    assert len(doc["result"]["points"]) == 14

    doc = json.loads(m.automorph_json([1, 1, -1], bound=3))
    assert doc["count"] == len(doc["automorphs"]) > 0
    assert [["1", "2", "2"], ["2", "1", "2"], ["2", "2", "3"]] in doc["automorphs"]

    try:
        m.solve_json("x^3 = 1")
    except ValueError as e:
        assert "degree 3 at token `x^3`" in str(e)
    else:
        raise AssertionError("expected ValueError for a cubic term")

    print("dioph_py smoke test passed")


if __name__ == "__main__":
    main()
