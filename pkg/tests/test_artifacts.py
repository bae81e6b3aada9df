import json
import numpy as np
import pytest
from moebiusql.artifacts.artifact import Artifact, PlotSpec
from moebiusql.artifacts.exporters import export_artifact, export_run_meta, write_json
from moebiusql.artifacts.importers import import_csv, import_json


@pytest.fixture
def artifact() -> Artifact:
    return Artifact(
        "corr",
        ["k", "re", "im"],
        [(0, 1.0, 0.0), (1, 0.5, -0.25)],
        meta={"n": 100, "bound": 1e-6},
        plot=PlotSpec("k", ["re", "im"]),
        attachments={"extra": {"values": np.arange(3)}},
    )


def test_csv_round_trip(tmp_path, artifact):
    paths = export_artifact(artifact, tmp_path / "out")
    assert [path.name for path in paths] == ["corr.csv", "corr.meta.json", "corr.gp", "extra.json"]
    restored = import_csv(tmp_path / "out" / "corr.csv")
    assert restored.columns == artifact.columns
    assert restored.rows == artifact.rows
    assert restored.meta == artifact.meta

def test_json_round_trip(tmp_path, artifact):
    paths = export_artifact(artifact, tmp_path, "json")
    assert not (tmp_path / "corr.gp").exists()
    assert tmp_path / "corr.json" in paths
    restored = import_json(tmp_path / "corr.json")
    assert restored.rows == artifact.rows
    assert restored.meta["n"] == 100

def test_empty_json_keeps_columns(tmp_path):
    export_artifact(Artifact("empty", ["a", "b"]), tmp_path, "json")
    assert import_json(tmp_path / "empty.json").columns == ["a", "b"]

def test_gnuplot_script(tmp_path, artifact):
    export_artifact(artifact, tmp_path)
    script = (tmp_path / "corr.gp").read_text()
    assert "set datafile separator ','" in script
    assert "'corr.csv' using 1:2" in script
    assert "'corr.csv' using 1:3" in script

def test_attachments_and_numpy_values(tmp_path, artifact):
    export_artifact(artifact, tmp_path)
    assert json.loads((tmp_path / "extra.json").read_text()) == {"values": [0, 1, 2]}
    write_json({"z": 1 + 2j, "x": np.float64(0.5)}, tmp_path / "plain.json")
    assert json.loads((tmp_path / "plain.json").read_text()) == {"z": {"re": 1.0, "im": 2.0}, "x": 0.5}

def test_run_meta(tmp_path, artifact):
    path = export_run_meta([artifact], tmp_path, {"command": "corr", "passed": True})
    document = json.loads(path.read_text())
    assert document["command"] == "corr"
    assert document["artifacts"]["corr"] == artifact.meta

def test_rows_must_match_columns(artifact):
    with pytest.raises(AssertionError):
        artifact.add_row(2, 0.1)
    with pytest.raises(AssertionError):
        Artifact("bad", ["a"], [(1, 2)])
    assert artifact.column("re") == [1.0, 0.5]
