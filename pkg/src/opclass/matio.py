"""Matrix file input and output.

Two formats are supported:

* JSON: ``{"dim": n, "entries": [[re, im], ...]}`` with exactly n^2
  row-major pairs.
* Matrix Market: ``matrix coordinate complex general`` and
  ``matrix array complex general`` (read via scipy.io, written at full
  double precision).

Both parsers reject non-square data.
"""

from __future__ import annotations

import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

from .errors import ParseError

__all__ = [
    "matrix_to_json_dict",
    "matrix_from_json_dict",
    "load_matrix",
    "save_matrix",
    "detect_format",
    "atomic_write_text",
]

_MM_SUFFIXES = {".mtx", ".mm", ".mtx.gz"}


def matrix_to_json_dict(a) -> dict:
    m = np.asarray(a, dtype=np.complex128)
    entries = [[float(z.real), float(z.imag)] for z in m.ravel(order="C")]
    return {"dim": int(m.shape[0]), "entries": entries}


def matrix_from_json_dict(doc: dict) -> np.ndarray:
    try:
        dim = int(doc["dim"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix JSON: {exc}") from exc
    if dim < 1:
        raise ParseError("matrix dimension must be at least 1")
    if len(entries) != dim * dim:
        raise ParseError(
            f"expected {dim * dim} entries for a {dim}x{dim} matrix, got {len(entries)}"
        )
    try:
        flat = np.array(
            [complex(float(re), float(im)) for re, im in entries], dtype=np.complex128
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"entries must be [re, im] pairs: {exc}") from exc
    m = flat.reshape(dim, dim)
    if not np.isfinite(m).all():
        raise ParseError("matrix entries must be finite")
    return m


def detect_format(path: str | Path, fmt: str | None = None) -> str:
    """Resolve 'json' or 'matrix-market' from an explicit format or the
    file extension."""
    if fmt is not None:
        if fmt not in ("json", "matrix-market"):
            raise ParseError(f"unknown matrix format {fmt!r}")
        return fmt
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix in _MM_SUFFIXES:
        return "matrix-market"
    raise ParseError(
        f"cannot infer matrix format from {Path(path).name!r}; pass --format"
    )


def load_matrix(path: str | Path, fmt: str | None = None) -> np.ndarray:
    resolved = detect_format(path, fmt)
    try:
        if resolved == "json":
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            return matrix_from_json_dict(doc)
        raw = scipy.io.mmread(os.fspath(path))
    except ParseError:
        raise
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise ParseError(f"cannot parse {Path(path).name!r}: {exc}") from exc
    m = np.asarray(
        raw.todense() if scipy.sparse.issparse(raw) else raw, dtype=np.complex128
    )
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParseError(f"matrix in {Path(path).name!r} is not square: {m.shape}")
    if not np.isfinite(m).all():
        raise ParseError("matrix entries must be finite")
    return m


def _mm_text(a: np.ndarray) -> str:
    buf = io.BytesIO()
    scipy.io.mmwrite(buf, a, field="complex", precision=17)
    return buf.getvalue().decode("ascii")


def save_matrix(path: str | Path, a, fmt: str | None = None) -> None:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParseError(f"refusing to write non-square matrix of shape {m.shape}")
    resolved = detect_format(path, fmt)
    if resolved == "json":
        text = json.dumps(matrix_to_json_dict(m), indent=2) + "\n"
    else:
        text = _mm_text(m)
    atomic_write_text(path, text)


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write via a temporary file in the target directory plus rename."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=target.name)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
