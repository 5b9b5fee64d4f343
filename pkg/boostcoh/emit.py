import io
import os
import sys
import csv
import json
from typing import Optional, Union

import numpy as np
from PIL import Image

from .basics import InvalidConfigError
from .sweep import COLUMNS, CellRecord, SweepGrid, resolve_field


PGM_MAXVAL = 65535
PGM_MID_GRAY = 32768


def _format_value(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(value, ".17g")


def _parse_value(text: str) -> Optional[float]:
    return None if text == "" else float(text)


def emit_grid(grid: SweepGrid, fmt: str = "csv") -> bytes:
    """
    Serialize a grid.

    CSV has a header row with COLUMNS and one row per cell in alpha-outer
    order, every number written with format ".17g" (up to 17 significant
    digits, trailing zeros dropped, exact on read-back) and unrequested
    measures left empty. JSON holds the same cells plus the axes and the run
    metadata; unrequested measures are null.

    Args:
        grid (SweepGrid): A complete grid.
        fmt (str): "csv" or "json".

    Returns:
        bytes: UTF-8 encoded document.
    """
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(COLUMNS)
        for cell in grid.cells:
            writer.writerow([_format_value(getattr(cell, c)) for c in COLUMNS])
        return buffer.getvalue().encode("utf-8")
    if fmt == "json":
        document = {
            "scenario": grid.scenario,
            "mass_mev": grid.mass,
            "center_mev": grid.center,
            "columns": list(COLUMNS),
            "axes": {
                "alpha": grid.alphas.tolist(),
                "sigma_mev": grid.sigmas.tolist(),
            },
            "cells": [{c: getattr(cell, c) for c in COLUMNS} for cell in grid.cells],
        }
        return (json.dumps(document, indent=4) + "\n").encode("utf-8")
    raise InvalidConfigError(f"Unknown output format {fmt!r}")


def parse_grid(data: Union[bytes, str], fmt: str = "csv") -> SweepGrid:
    """Inverse of emit_grid. CSV carries no metadata, so it comes back as None."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(data)))
        if not rows or tuple(rows[0]) != COLUMNS:
            raise InvalidConfigError(f"CSV header must be {','.join(COLUMNS)}")
        cells = [
            CellRecord(**{c: _parse_value(v) for c, v in zip(COLUMNS, row)})
            for row in rows[1:]
        ]
        alphas = list(dict.fromkeys(cell.alpha for cell in cells))
        sigmas = [cell.sigma_mev for cell in cells if cell.alpha == alphas[0]]
        return SweepGrid(alphas, sigmas, cells)
    if fmt == "json":
        document = json.loads(data)
        cells = [CellRecord(**cell) for cell in document["cells"]]
        return SweepGrid(
            document["axes"]["alpha"],
            document["axes"]["sigma_mev"],
            cells,
            scenario=document.get("scenario"),
            mass=document.get("mass_mev"),
            center=document.get("center_mev"),
        )
    raise InvalidConfigError(f"Unknown output format {fmt!r}")


def heatmap_range(grid: SweepGrid, field: str):
    values = grid.field(field)
    return float(values.min()), float(values.max())


def emit_heatmap(grid: SweepGrid, field: str) -> bytes:
    """
    Render one field as a binary 16-bit PGM, one pixel per cell.

    Rows follow alpha (first alpha on top), columns follow sigma. Values are
    mapped linearly from [min, max] onto [0, 65535]; a constant field gives a
    uniform mid-gray image.
    """
    values = grid.field(field)
    low, high = heatmap_range(grid, field)
    if high > low:
        pixels = np.rint((values - low) / (high - low) * PGM_MAXVAL)
    else:
        pixels = np.full(values.shape, PGM_MID_GRAY)
    image = Image.fromarray(pixels.astype(np.int32))
    buffer = io.BytesIO()
    image.save(buffer, format="PPM")
    return buffer.getvalue()


def heatmap_sidecar(grid: SweepGrid, field: str) -> str:
    """Text stored next to a heatmap so that gray levels can be read back."""
    column = resolve_field(field)
    low, high = heatmap_range(grid, column)
    n_alpha, n_sigma = grid.shape
    lines = [
        f"field: {column}",
        f"min: {_format_value(low)}",
        f"max: {_format_value(high)}",
        f"rows: alpha, {n_alpha} values from {_format_value(grid.alphas[0])} "
        f"to {_format_value(grid.alphas[-1])}",
        f"columns: sigma_mev, {n_sigma} values from {_format_value(grid.sigmas[0])} "
        f"to {_format_value(grid.sigmas[-1])}",
        f"maxval: {PGM_MAXVAL}",
    ]
    if high == low:
        lines.append(f"zero range: uniform gray {PGM_MID_GRAY}")
    return "\n".join(lines) + "\n"


def heatmap_paths(out: Optional[str], field: str):
    """(<stem>_<column>.pgm, <stem>_<column>.txt) next to the grid output."""
    stem = os.path.splitext(out)[0] if out else "sweep"
    column = resolve_field(field)
    return f"{stem}_{column}.pgm", f"{stem}_{column}.txt"


def write_outputs(grid: SweepGrid, fmt: str, out: Optional[str], heatmap=None):
    """
    Write the grid to out (stdout when None) and the optional heatmap with
    its sidecar. Returns the list of files written.
    """
    written = []
    data = emit_grid(grid, fmt)
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        dirname = os.path.dirname(out)
        if dirname:
            os.makedirs(dirname, exist_ok=True)
        with open(out, "wb") as f:
            f.write(data)
        written.append(out)
    if heatmap is not None:
        image_path, sidecar_path = heatmap_paths(out, heatmap)
        with open(image_path, "wb") as f:
            f.write(emit_heatmap(grid, heatmap))
        with open(sidecar_path, "w") as f:
            f.write(heatmap_sidecar(grid, heatmap))
        written.extend([image_path, sidecar_path])
    return written
