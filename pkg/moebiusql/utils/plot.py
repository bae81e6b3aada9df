from typing import Literal, Optional, Sequence
import numpy as np
import numpy.typing as npt
from plotly import graph_objects as go

AxisScale = Literal["linear", "log"]


def add_plot(
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    fig: Optional[go.Figure] = None,
    label: str = "Plot",
    mode: str = "lines+markers",
):
    fig = go.Figure() if fig is None else fig
    y = np.asarray(y)
    if np.iscomplexobj(y):
        fig.add_scatter(x=x, y=y.real, name=f"{label} (re)", mode=mode, marker=dict(size=3))
        fig.add_scatter(x=x, y=y.imag, name=f"{label} (im)", mode=mode, marker=dict(size=3))
    else:
        fig.add_scatter(x=x, y=y, name=label, mode=mode, marker=dict(size=3))
    return fig


def gnuplot_script(
    csv_name: str,
    x_column: str,
    y_columns: Sequence[str],
    columns: Sequence[str],
    title: str,
    x_scale: AxisScale = "linear",
    y_scale: AxisScale = "linear",
) -> str:
    "gnuplot script plotting y_columns against x_column from a headed CSV file"
    x_index = columns.index(x_column) + 1
    lines = [
        f"# {title}",
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set title '{title}'",
        f"set xlabel '{x_column}'",
    ]
    if x_scale == "log":
        lines.append("set logscale x")
    if y_scale == "log":
        lines.append("set logscale y")
    plots = [
        f"'{csv_name}' using {x_index}:{columns.index(column) + 1} with linespoints title '{column}'"
        for column in y_columns
    ]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"
