import json

from ncg import fixtures as fx
from ncg import metric as Mt
from ncg.bimodule import bimodule_to_json


def test_bimodule_fixture_files_match_builders():
    for name, build in (("t2_twisted", fx.t2_twisted), ("n3_quotient", fx.n3_quotient)):
        doc = fx.load_json(name)
        doc.pop("algebra")
        assert bimodule_to_json(build()) == doc


def test_killing_file_carries_convention():
    d = fx.load_json("killing")
    assert d["kind"] == "pseudo_metric" and d["algebra"] == "m2"
    assert "traceless" in d["convention"]
    A = fx.load("m2")
    assert Mt.pseudo_metric_from_json(A, d).to_json()["values"] == d["values"]


def test_every_shipped_file_is_json():
    for p in fx.DATA_DIR.glob("*.json"):
        json.loads(p.read_text())
