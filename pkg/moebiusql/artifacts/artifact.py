from dataclasses import dataclass, field
from typing import Any, Literal, Optional, Sequence
import pandas as pd

ArtifactFormat = Literal["csv", "json"]
AxisScale = Literal["linear", "log"]


@dataclass
class PlotSpec:
    x: str
    "column on the horizontal axis"

    y: Sequence[str]
    "columns drawn against x"

    x_scale: AxisScale = "linear"
    y_scale: AxisScale = "linear"


@dataclass
class Artifact:
    name: str
    "file stem, e.g. corr for corr.csv"

    columns: list[str]
    "column names of the data table"

    rows: list[tuple] = field(default_factory=list)
    "data rows in column order"

    meta: dict[str, Any] = field(default_factory=dict)
    "parameters and truncation bounds written next to the data"

    plot: Optional[PlotSpec] = None
    "how the gnuplot script and show() draw the table"

    attachments: dict[str, Any] = field(default_factory=dict)
    "extra JSON documents written as <key>.json"

    def __post_init__(self):
        assert all(len(row) == len(self.columns) for row in self.rows), f"rows of {self.name} do not match its columns"

    def add_row(self, *values):
        assert len(values) == len(self.columns), f"{self.name} expects {len(self.columns)} values"
        self.rows.append(tuple(values))
        return self

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=self.columns)

    def column(self, name: str) -> list:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def __repr__(self):
        return f"<Artifact {self.name} rows={len(self.rows)} columns={self.columns}>"
