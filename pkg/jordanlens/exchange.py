"""File formats: the matrix exchange format, region CSV and SVG plots of regions.

Matrix files are UTF-8 text: a header line ``n k`` followed by n lines of k
whitespace-separated complex literals written ``a+bi`` (``1``, ``-2i``,
``0.5-0.866i``).
"""

import logging
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import pandas as pd

from jordanlens.exceptions import InputError, ParseError
from jordanlens.models import ConvexRegion, EllipticDisk

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _split_imaginary(body: str):
    """Split 'a+b' / 'a-b' at the sign that starts the imaginary part (not an exponent sign)"""
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "eE":
            return body[:pos], body[pos:]
    return "", body


def parse_complex(literal: str) -> complex:
    text = literal.strip()
    try:
        if not text.endswith("i"):
            return complex(float(text), 0.0)
        real_text, imag_text = _split_imaginary(text[:-1])
        real = float(real_text) if real_text else 0.0
        if imag_text in ("", "+"):
            imag = 1.0
        elif imag_text == "-":
            imag = -1.0
        else:
            imag = float(imag_text)
    except ValueError:
        raise ValueError(f"Unparsable complex literal '{literal}'") from None
    return complex(real, imag)


def format_complex(z: complex) -> str:
    """17 significant digits so that parsing returns the identical double"""
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.17g}"
    if z.real == 0:
        return f"{z.imag:.17g}i"
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_matrix_text(text: str, path: Optional[str] = None) -> np.ndarray:
    lines = [(number, line) for number, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not lines:
        raise ParseError("empty file, expected header 'n k'", path, 1)

    header_line, header = lines[0]
    fields = header.split()
    if len(fields) != 2 or not all(field.isdigit() for field in fields):
        raise ParseError(f"malformed header '{header.strip()}', expected 'n k'", path, header_line)
    n, k = int(fields[0]), int(fields[1])
    if n < 1:
        raise ParseError("row count must be positive", path, header_line)

    rows = lines[1:]
    if k == 0:
        # rows of a zero-column matrix are blank
        if rows:
            raise ParseError("a matrix with 0 columns has no entries", path, rows[0][0])
        return np.zeros((n, 0), dtype=complex)
    if len(rows) != n:
        line = rows[-1][0] if rows else header_line
        raise ParseError(f"expected {n} rows, found {len(rows)}", path, line)

    matrix = np.zeros((n, k), dtype=complex)
    for i, (number, line) in enumerate(rows):
        entries = line.split()
        if len(entries) != k:
            raise ParseError(f"expected {k} entries, found {len(entries)}", path, number)
        for j, literal in enumerate(entries):
            try:
                matrix[i, j] = parse_complex(literal)
            except ValueError as e:
                raise ParseError(str(e), path, number) from e
    return matrix


def parse_matrix_file(path: PathLike) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    return parse_matrix_text(text, str(path))


def format_matrix(matrix: np.ndarray) -> str:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    n, k = matrix.shape
    lines = [f"{n} {k}"]
    lines += [" ".join(format_complex(z) for z in row) for row in matrix]
    return "\n".join(lines) + "\n"


def write_matrix_file(matrix: np.ndarray, path: PathLike) -> Path:
    path = Path(path)
    path.write_text(format_matrix(matrix), encoding="utf-8")
    logger.info("wrote %s", path)
    return path


def region_frame(region: ConvexRegion) -> pd.DataFrame:
    return pd.DataFrame({"re": region.vertices.real, "im": region.vertices.imag})


def write_region_csv(region: ConvexRegion, path: Optional[PathLike] = None) -> str:
    """CSV with header ``re,im``, one CCW vertex per line, first vertex not repeated"""
    text = region_frame(region).to_csv(index=False, float_format="%.17g", lineterminator="\n")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info("wrote %s", path)
    return text


def read_region_csv(path: PathLike) -> np.ndarray:
    frame = pd.read_csv(path)
    if list(frame.columns) != ["re", "im"]:
        raise ParseError(f"expected header 're,im', found '{','.join(frame.columns)}'", str(path), 1)
    return frame["re"].to_numpy() + 1j * frame["im"].to_numpy()


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def render_svg(region: ConvexRegion, disks: Sequence[EllipticDisk] = ()) -> str:
    """Standalone SVG: axes with unit ticks, generator ellipses, the hull and the foci.

    The imaginary axis points up, so every y coordinate is negated.
    """
    re_lo, re_hi, im_lo, im_hi = region.bounds
    width = max(re_hi - re_lo, 1e-3)
    height = max(im_hi - im_lo, 1e-3)
    pad_x, pad_y = 0.1 * width, 0.1 * height
    x0, x1 = re_lo - pad_x, re_hi + pad_x
    y0, y1 = -(im_hi + pad_y), -(im_lo - pad_y)
    stroke = _fmt(max(x1 - x0, y1 - y0) / 400)

    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": " ".join(_fmt(v) for v in (x0, y0, x1 - x0, y1 - y0)),
        "width": "600",
        "height": _fmt(600 * (y1 - y0) / (x1 - x0)),
    })
    axes = ET.SubElement(svg, "g", {"stroke": "#888", "stroke-width": stroke})
    if y0 <= 0 <= y1:
        ET.SubElement(axes, "line", {"x1": _fmt(x0), "y1": "0", "x2": _fmt(x1), "y2": "0"})
    if x0 <= 0 <= x1:
        ET.SubElement(axes, "line", {"x1": "0", "y1": _fmt(y0), "x2": "0", "y2": _fmt(y1)})
    tick = (y1 - y0) / 50
    for value in range(int(np.ceil(x0)), int(np.floor(x1)) + 1):
        ET.SubElement(axes, "line", {"x1": str(value), "y1": _fmt(-tick), "x2": str(value), "y2": _fmt(tick)})
    tick = (x1 - x0) / 50
    for value in range(int(np.ceil(y0)), int(np.floor(y1)) + 1):
        ET.SubElement(axes, "line", {"x1": _fmt(-tick), "y1": str(value), "x2": _fmt(tick), "y2": str(value)})

    for disk in disks:
        ET.SubElement(svg, "ellipse", {
            "cx": _fmt(disk.center.real), "cy": _fmt(-disk.center.imag),
            "rx": _fmt(disk.semi_major), "ry": _fmt(disk.semi_minor),
            "fill": "none", "stroke": "#1f77b4", "stroke-width": stroke,
        })
    ET.SubElement(svg, "polygon", {
        "points": " ".join(f"{_fmt(z.real)},{_fmt(-z.imag)}" for z in region.vertices),
        "fill": "#ff7f0e", "fill-opacity": "0.25", "stroke": "#ff7f0e", "stroke-width": stroke,
    })
    for disk in disks:
        for focus in disk.foci:
            ET.SubElement(svg, "circle", {
                "cx": _fmt(focus.real), "cy": _fmt(-focus.imag), "r": stroke, "fill": "#d62728",
            })
    return ET.tostring(svg, encoding="unicode")


def emit_svg(region: ConvexRegion, disks: Iterable[EllipticDisk], path: PathLike) -> Path:
    path = Path(path)
    try:
        path.write_text(render_svg(region, tuple(disks)), encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot write {path}: {e}") from e
    logger.info("wrote %s", path)
    return path
