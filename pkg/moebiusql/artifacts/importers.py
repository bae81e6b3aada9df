import json
from pathlib import Path
from typing import Union
import pandas as pd
from moebiusql.artifacts.artifact import Artifact

PathLike = Union[str, Path]


def _read_meta(data_path: Path) -> dict:
    meta_path = data_path.with_name(f"{data_path.stem}.meta.json")
    if not meta_path.is_file():
        return {}
    meta = json.loads(meta_path.read_text(encoding="utf-8"))
    meta.pop("name", None)
    meta.pop("columns", None)
    return meta

def import_csv(file_path: PathLike) -> Artifact:
    """Import an artifact from CSV, picking up its sibling meta.json"""
    file_path = Path(file_path)
    frame = pd.read_csv(file_path)
    rows = [tuple(row) for row in frame.itertuples(index=False, name=None)]
    return Artifact(file_path.stem, list(frame.columns), rows, _read_meta(file_path))

def import_json(file_path: PathLike) -> Artifact:
    """Import an artifact from a JSON list of records"""
    file_path = Path(file_path)
    records = json.loads(file_path.read_text(encoding="utf-8"))
    columns = list(records[0].keys()) if records else _read_meta(file_path).get("columns", [])
    rows = [tuple(record[column] for column in columns) for record in records]
    return Artifact(file_path.stem, columns, rows, _read_meta(file_path))
