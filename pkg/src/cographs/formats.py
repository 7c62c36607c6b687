"""File formats: adjacency-matrix graymaps, CSV tables, experiment specs.

The renderer emits binary portable graymaps (P5): an ``n x n`` image
whose pixel ``(i, j)`` is black exactly when the leaves at depth-first
positions ``i`` and ``j`` of the cotree are adjacent in the associated
cograph.  P5 was chosen over compressed formats deliberately — no
dependencies and bit-exact diffs in tests.  CSV writers cover count
tables, exact series coefficients (as numerator/denominator pairs) and
empirical distributions with binomial standard errors.

:class:`ExperimentSpec` bundles every experiment parameter — command,
sampling configuration, metric selection, tolerance overrides and output
paths — into one JSON-serializable object, so a reproducible run is a
data file rather than code.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .cotree import Cotree, cograph_of, leaf_dfs_order
from .graph import Cograph, SizeLimitError
from .samplers import SampleConfig
from .stats import EmpiricalDistribution

__all__ = [
    "ExperimentSpec",
    "RENDER_CAP",
    "pgm_to_adjacency",
    "read_pgm",
    "render_adjacency_pgm",
    "summary_json",
    "write_keyed_csv",
    "write_samples_csv",
    "write_series_csv",
    "write_table_csv",
]

#: Largest image side accepted by the renderer.
RENDER_CAP = 1 << 14

_BLACK = 0
_WHITE = 255


def render_adjacency_pgm(t: Cotree, out) -> None:
    """Write the adjacency matrix of ``cograph_of(t)`` as a binary P5 graymap.

    Vertices are ordered by the depth-first search of the cotree; black
    pixels (value 0) mark adjacent pairs, so the image is symmetric with
    a white diagonal.  ``out`` is a path or binary file object.  Sizes
    above :data:`RENDER_CAP` are refused.
    """
    n = t.n
    if n > RENDER_CAP:
        raise SizeLimitError(f"render size {n} exceeds cap {RENDER_CAP}")
    g = cograph_of(t)
    order = leaf_dfs_order(t)
    if t.labeled:
        verts = [t.label(v) - 1 for v in order]
    else:
        pos = {leaf: i for i, leaf in enumerate(t.leaves())}
        verts = [pos[v] for v in order]
    perm = np.array(verts, dtype=np.int64)

    def emit(fh) -> None:
        fh.write(b"P5\n%d %d\n255\n" % (n, n))
        # unpack adjacency rows in DFS order, then permute the columns
        block = 1 << 22  # pixels per write, ~4 MiB
        rows_per_chunk = max(1, block // max(n, 1))
        buf = np.empty((rows_per_chunk, n), dtype=np.uint8)
        done = 0
        while done < n:
            m = min(rows_per_chunk, n - done)
            for i in range(m):
                row = g.row(verts[done + i])
                bits = np.frombuffer(
                    row.to_bytes((n + 7) // 8, "little"), dtype=np.uint8
                )
                buf[i] = np.unpackbits(bits, bitorder="little", count=n)
            chunk = np.where(buf[:m][:, perm] != 0, _BLACK, _WHITE).astype(np.uint8)
            fh.write(chunk.tobytes())
            done += m

    if hasattr(out, "write"):
        emit(out)
    else:
        with open(out, "wb") as fh:
            emit(fh)


def read_pgm(src) -> np.ndarray:
    """Read a binary P5 graymap back as a uint8 matrix."""
    if hasattr(src, "read"):
        data = src.read()
    else:
        with open(src, "rb") as fh:
            data = fh.read()
    pos = 0

    def token() -> bytes:
        nonlocal pos
        while True:
            while pos < len(data) and data[pos : pos + 1].isspace():
                pos += 1
            if pos < len(data) and data[pos : pos + 1] == b"#":
                while pos < len(data) and data[pos] != 0x0A:
                    pos += 1
                continue
            break
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        return data[start:pos]

    magic = token()
    if magic != b"P5":
        raise ValueError(f"not a binary P5 graymap: magic {magic!r}")
    width = int(token())
    height = int(token())
    maxval = int(token())
    if maxval > 255:
        raise ValueError("16-bit graymaps are not supported")
    pos += 1  # single whitespace after maxval
    raster = data[pos : pos + width * height]
    if len(raster) != width * height:
        raise ValueError("truncated raster")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width)


def pgm_to_adjacency(matrix: np.ndarray) -> Cograph:
    """Rebuild the graph encoded by a rendered graymap (black = edge)."""
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValueError("adjacency image must be square")
    ii, jj = np.nonzero(matrix == _BLACK)
    edges = [(int(a), int(b)) for a, b in zip(ii, jj) if a < b]
    return Cograph(n, edges)


# ---------------------------------------------------------------------------
# CSV


def _open_text(out):
    if hasattr(out, "write"):
        return out, False
    return open(out, "w", encoding="utf-8", newline=""), True


def write_table_csv(header: Sequence[str], rows, out) -> None:
    """Write rows of plain values with a header line."""
    fh, owned = _open_text(out)
    try:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(x) for x in row) + "\n")
    finally:
        if owned:
            fh.close()


def write_series_csv(series, out, *, start: int = 0) -> None:
    """Dump exact series coefficients as ``n,numerator,denominator`` rows."""
    rows = []
    for n in range(start, series.order + 1):
        c = series.coeff(n)
        num, den = c.numerator, c.denominator
        rows.append((n, num, den))
    write_table_csv(("n", "numerator", "denominator"), rows, out)


def _key_str(key) -> str:
    if isinstance(key, bytes):
        return key.decode("ascii")
    return str(key)


def write_keyed_csv(dist: EmpiricalDistribution, out) -> None:
    """Keyed empirical law as ``key,count,probability,stderr`` rows."""
    rows = [
        (_key_str(k), c, f"{dist.probability(k):.10g}", f"{dist.stderr(k):.4g}")
        for k, c in dist.items()
    ]
    write_table_csv(("key", "count", "probability", "stderr"), rows, out)


def write_samples_csv(dist: EmpiricalDistribution, out) -> None:
    """Real-valued empirical law as one ``value`` row per sample."""
    write_table_csv(("value",), ((f"{x:.12g}",) for x in dist.samples), out)


# ---------------------------------------------------------------------------
# Experiment specs


@dataclass(frozen=True)
class ExperimentSpec:
    """Complete, serializable description of one CLI experiment run."""

    command: str
    sample: SampleConfig = field(default_factory=lambda: SampleConfig(n=1))
    metric: Optional[str] = None
    k: int = 3
    trials: int = 1000
    jmax: int = 60
    tolerance: Optional[float] = None
    fmt: str = "csv"
    out: Optional[str] = None
    fig: Optional[str] = None

    def to_json_dict(self) -> dict:
        d = asdict(self)
        d["sample"] = asdict(self.sample)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "ExperimentSpec":
        d = dict(d)
        d["sample"] = SampleConfig(**d["sample"])
        return cls(**d)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "ExperimentSpec":
        return cls.from_json_dict(json.loads(text))


def summary_json(spec: ExperimentSpec, metric: str, value, tolerance, passed) -> str:
    """The experiment summary emitted next to CSV outputs."""
    return json.dumps(
        {
            "config": spec.to_json_dict(),
            "metric": metric,
            "value": value,
            "tolerance": tolerance,
            "pass": bool(passed) if passed is not None else None,
        },
        indent=2,
        sort_keys=True,
    )
