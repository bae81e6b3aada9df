import json
import logging
from pathlib import Path
from typing import Any, Sequence, Union
import numpy as np
from moebiusql.artifacts.artifact import Artifact, ArtifactFormat
from moebiusql.utils.plot import gnuplot_script

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _plain(value: Any) -> Any:
    "converts numpy scalars and arrays into JSON-serialisable values"
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value

def write_json(document: Any, file_path: PathLike):
    Path(file_path).write_text(json.dumps(_plain(document), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def export_csv(artifact: Artifact, out_dir: PathLike) -> Path:
    "Export the data table of an artifact as CSV with a header row"
    file_path = Path(out_dir) / f"{artifact.name}.csv"
    artifact.to_frame().to_csv(file_path, index=False)
    return file_path

def export_json(artifact: Artifact, out_dir: PathLike) -> Path:
    "Export the data table of an artifact as a JSON list of records"
    file_path = Path(out_dir) / f"{artifact.name}.json"
    write_json([dict(zip(artifact.columns, row)) for row in artifact.rows], file_path)
    return file_path

def export_meta(artifact: Artifact, out_dir: PathLike) -> Path:
    file_path = Path(out_dir) / f"{artifact.name}.meta.json"
    write_json({"name": artifact.name, "columns": artifact.columns, **artifact.meta}, file_path)
    return file_path

def export_gnuplot(artifact: Artifact, data_path: Path) -> Path:
    assert artifact.plot is not None, f"{artifact.name} has no plot specification"
    file_path = data_path.with_name(f"{artifact.name}.gp")
    script = gnuplot_script(
        data_path.name,
        artifact.plot.x,
        artifact.plot.y,
        artifact.columns,
        artifact.name,
        artifact.plot.x_scale,
        artifact.plot.y_scale,
    )
    file_path.write_text(script, encoding="utf-8")
    return file_path

def export_artifact(artifact: Artifact, out_dir: PathLike, format: ArtifactFormat = "csv") -> list[Path]:
    "Writes data, sibling meta.json, gnuplot script and attachments; returns the written paths"
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    data_path = export_csv(artifact, out_dir) if format == "csv" else export_json(artifact, out_dir)
    paths = [data_path, export_meta(artifact, out_dir)]
    if artifact.plot is not None and format == "csv":
        paths.append(export_gnuplot(artifact, data_path))
    for key, document in artifact.attachments.items():
        attachment_path = out_dir / f"{key}.json"
        write_json(document, attachment_path)
        paths.append(attachment_path)
    logger.info("wrote %s", ", ".join(path.name for path in paths))
    return paths

def export_run_meta(artifacts: Sequence[Artifact], out_dir: PathLike, run: dict[str, Any]) -> Path:
    "Aggregated meta.json for a run: run parameters plus every artifact's metadata"
    file_path = Path(out_dir) / "meta.json"
    write_json({**run, "artifacts": {artifact.name: artifact.meta for artifact in artifacts}}, file_path)
    return file_path
