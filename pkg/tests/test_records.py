import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistor_ga.records import (
    CSV_COLUMNS,
    GeometryRecord,
    RunManifest,
    manifest_path,
    records_from_csv,
    records_from_json,
    records_to_csv,
    records_to_json,
)

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
points = st.lists(st.tuples(finite, finite, finite), min_size=1, max_size=6)
records = st.builds(
    GeometryRecord,
    kind=st.sampled_from(["tangent", "circle", "dline", "ray"]),
    id=st.integers(0, 50),
    points=points.map(tuple),
    meta=st.dictionaries(st.sampled_from(["s", "tau", "phi", "radius"]), finite),
)


class TestGeometryRecord:
    def test_validation(self):
        with pytest.raises(ValueError):
            GeometryRecord("blob", 0, ((0, 0, 0),))
        with pytest.raises(ValueError):
            GeometryRecord("ray", 0, ())
        with pytest.raises(ValueError):
            GeometryRecord("ray", 0, ((0, math.inf, 0),))
        with pytest.raises(ValueError):
            GeometryRecord("ray", 0, ((0, 0),))
        with pytest.raises(ValueError):
            GeometryRecord("ray", 0, ((0, 0, 0),), params=(1.0, 2.0))

    @settings(max_examples=50, deadline=None)
    @given(st.lists(records, max_size=4))
    def test_json_roundtrip(self, recs):
        assert records_from_json(records_to_json(recs)) == recs

    @settings(max_examples=50, deadline=None)
    @given(st.lists(records, min_size=1, max_size=4))
    def test_csv_roundtrip_points(self, recs):
        # distinct (kind, id) keys so groups do not merge
        recs = list({(r.kind, r.id): r for r in recs}.values())
        back = records_from_csv(records_to_csv(recs))
        assert [(r.kind, r.id, r.points) for r in back] == [(r.kind, r.id, r.points) for r in recs]

    def test_csv_header(self):
        text = records_to_csv([GeometryRecord("circle", 3, ((1, 2, 3),), params=(0.5,))])
        lines = text.splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS) == "kind,id,theta_or_index,x,y,z"
        assert lines[1] == "circle,3,0.5,1.0,2.0,3.0"


class TestManifest:
    def test_checks_and_serialisation(self):
        m = RunManifest("verify", {"suite": "all"}, 42, {"identity": 1e-10})
        assert m.add_check("a", 1e-12, 1e-10)
        assert m.add_check("gap", 0.1, 0.0, ">")
        assert m.passed
        assert not m.add_check("b", 1.0, 1e-10, suite="algebra")
        body = json.loads(m.to_json())
        assert body["passed"] is False and body["checks"][2]["suite"] == "algebra"
        assert m.to_json() == m.to_json()
        with pytest.raises(ValueError):
            m.add_check("c", 0.0, 0.0, "<")

    def test_sidecar_name(self, tmp_path):
        assert manifest_path(tmp_path / "scene.csv").name == "scene.csv.manifest.json"
