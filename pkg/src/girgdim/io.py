"""Edge-list ingestion, weight/position files, and result serialization."""
from __future__ import annotations

import csv
import io
import json
import os
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, TextIO, Union

import numpy as np

from . import __version__
from .graph import GraphInstance

SCHEMA = "girgdim/1"
BAND_COLUMNS = ("w_c", "c", "n_band", "s_size", "cc_plus", "inferred_d", "accepted_ds")

PathLike = Union[str, os.PathLike]


@dataclass(frozen=True)
class EdgeListFormat:
    comment_prefix: str = "#"


@dataclass
class RunRecord:
    """Provenance for one CLI invocation.

    ``header()`` omits the wall time so that reruns with the same inputs
    produce byte-identical outputs; the full record goes to ``run.json``.
    """

    command: str
    parameters: dict
    seed: Optional[int] = None
    version: str = field(default_factory=lambda: describe_version())
    outputs: list = field(default_factory=list)
    wall_time: Optional[float] = None

    def header(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "parameters": self.parameters,
                "seed": self.seed, "version": self.version}

    def full(self) -> dict:
        return {**self.header(), "outputs": list(self.outputs), "wall_time": self.wall_time}


def describe_version() -> str:
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"], capture_output=True, text=True,
                             cwd=Path(__file__).parent, timeout=5)
        if out.returncode == 0 and out.stdout.strip():
            return f"{__version__}+{out.stdout.strip()}"
    except (OSError, subprocess.SubprocessError):
        pass
    return __version__


def atomic_write_text(path: PathLike, text: str) -> None:
    """Write via a temp file in the same directory plus rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header_lines(record: Optional[RunRecord], prefix="# ", end="\n") -> str:
    if record is None:
        return ""
    return prefix + json.dumps(record.header(), sort_keys=True) + end


# -- edge lists -------------------------------------------------------------------

def _open_text(source) -> tuple[TextIO, bool]:
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8"), True
    return source, False


def parse_edge_list(source, fmt: EdgeListFormat = EdgeListFormat()) -> GraphInstance:
    """Read a whitespace-separated ``u v`` edge list.

    Comment lines start with ``fmt.comment_prefix``; columns beyond the first
    two are ignored.  Endpoint ids are compacted to ``0..n-1`` in increasing
    order, unless a ``girgdim/1`` header declares ``n`` (files written by
    :func:`write_edge_list`), in which case ids are kept as they are so that
    isolated vertices survive a round trip.  Self-loops and duplicate edges
    are dropped and counted in ``meta``.
    """
    fh, close = _open_text(source)
    declared_n = None
    us, vs = [], []
    try:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s:
                continue
            if s.startswith(fmt.comment_prefix):
                body = s[len(fmt.comment_prefix):].strip()
                if body.startswith("{") and SCHEMA in body:
                    try:
                        declared = json.loads(body).get("n")
                    except json.JSONDecodeError:
                        declared = None
                    if declared is not None:
                        declared_n = int(declared)
                continue
            parts = s.split()
            if len(parts) < 2:
                raise ValueError(f"line {lineno}: expected two vertex ids, got {s!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: vertex ids must be integers, got {s!r}") from None
            us.append(a)
            vs.append(b)
    finally:
        if close:
            fh.close()
    if not us and declared_n is None:
        raise ValueError("edge list is empty")
    u = np.asarray(us, dtype=np.int64)
    v = np.asarray(vs, dtype=np.int64)
    if declared_n is not None and (u.size == 0 or (min(u.min(), v.min()) >= 0 and max(u.max(), v.max()) < declared_n)):
        n = declared_n
        ids = np.arange(n, dtype=np.int64)
    else:
        ids, inv = np.unique(np.concatenate([u, v]), return_inverse=True)
        n = ids.size
        u, v = inv[:u.size], inv[u.size:]
    name = str(source) if close else getattr(source, "name", "<stream>")
    meta = {"source": name, "original_ids": ids, "edge_lines": len(us)}
    return GraphInstance.from_edges(n, u, v, meta=meta)


def format_edge_list(g: GraphInstance, record: Optional[RunRecord] = None) -> str:
    buf = io.StringIO()
    header = {"schema": SCHEMA, "n": g.n, "m": g.m}
    buf.write("# " + json.dumps(header, sort_keys=True) + "\n")
    buf.write(_header_lines(record))
    u, v = g.edges()
    np.savetxt(buf, np.column_stack([u, v]), fmt="%d")
    return buf.getvalue()


def write_edge_list(g: GraphInstance, path: PathLike, record: Optional[RunRecord] = None) -> None:
    atomic_write_text(path, format_edge_list(g, record))


def _read_indexed_rows(path: PathLike, ncols: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    ids, rows = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            try:
                ids.append(int(parts[0]))
                rows.append([float(x) for x in parts[1:]])
            except (ValueError, IndexError):
                raise ValueError(f"{path}:{lineno}: malformed row {s!r}") from None
            if len(rows[-1]) == 0 or (ncols is not None and len(rows[-1]) != ncols):
                raise ValueError(f"{path}:{lineno}: wrong number of columns")
    return np.asarray(ids, dtype=np.int64), np.asarray(rows, dtype=np.float64)


def read_weights(path: PathLike, n: int) -> np.ndarray:
    """Read ``v w`` lines aligned to compacted vertex ids."""
    ids, rows = _read_indexed_rows(path, 1)
    if ids.size != n or not np.array_equal(np.sort(ids), np.arange(n)):
        raise ValueError(f"weight file must list every vertex 0..{n - 1} exactly once")
    w = np.empty(n)
    w[ids] = rows[:, 0]
    return w


def _fmt_float(x: float) -> str:
    return repr(float(x))


def format_indexed(values: np.ndarray, record: Optional[RunRecord] = None) -> str:
    buf = io.StringIO()
    buf.write(_header_lines(record))
    values = np.asarray(values)
    if values.ndim == 1:
        values = values[:, None]
    for i, row in enumerate(values):
        buf.write(str(i) + " " + " ".join(_fmt_float(x) for x in row) + "\n")
    return buf.getvalue()


def write_weights(weights, path: PathLike, record: Optional[RunRecord] = None) -> None:
    atomic_write_text(path, format_indexed(weights, record))


def write_positions(positions, path: PathLike, record: Optional[RunRecord] = None) -> None:
    atomic_write_text(path, format_indexed(positions, record))


def read_positions(path: PathLike, n: int) -> np.ndarray:
    ids, rows = _read_indexed_rows(path)
    if ids.size != n or not np.array_equal(np.sort(ids), np.arange(n)):
        raise ValueError(f"position file must list every vertex 0..{n - 1} exactly once")
    out = np.empty_like(rows)
    out[ids] = rows
    return out


def read_graph(edges: PathLike, weights: Optional[PathLike] = None) -> GraphInstance:
    g = parse_edge_list(edges)
    if weights is not None:
        g = g.with_weights(read_weights(weights, g.n), weight_source="file")
    return g


# -- verdict / band outputs -------------------------------------------------------

def _num(x):
    if x is None:
        return None
    return float(x)


def verdict_to_dict(verdict, label: str, record: Optional[RunRecord] = None) -> dict:
    bands = []
    for b in verdict.per_band:
        bands.append({
            "w_c": b.band.w_c, "c": b.band.c, "n_band": b.n_band, "m_band": b.m_band,
            "s_size": b.s_size, "cc_plus": _num(b.cc_plus), "inferred_d": b.inferred_d,
            "accepted_ds": sorted(b.accepted_ds), "low_confidence": b.low_confidence, "reason": b.reason,
        })
    out = {
        "schema": SCHEMA,
        "label": label,
        "aggregate_d": verdict.aggregate_d,
        "aggregate_rule": verdict.aggregate_rule,
        "c": verdict.c,
        "n": verdict.n,
        "d_max": verdict.d_max,
        "min_support": verdict.min_support,
        "weight_source": verdict.weight_source,
        "bands": bands,
    }
    if verdict.extra:
        out["extra"] = verdict.extra
    if record is not None:
        out["run"] = record.header()
    return out


def format_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def format_csv(columns: Iterable[str], rows: Iterable[Iterable], record: Optional[RunRecord] = None) -> str:
    buf = io.StringIO()
    buf.write(_header_lines(record, end="\r\n"))
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(list(columns))
    for row in rows:
        writer.writerow(["" if x is None else x for x in row])
    return buf.getvalue()


def band_rows(verdict):
    for b in verdict.per_band:
        yield (repr(b.band.w_c), repr(b.band.c), b.n_band, b.s_size,
               None if b.cc_plus is None else repr(b.cc_plus), b.inferred_d,
               " ".join(str(d) for d in sorted(b.accepted_ds)))


def read_csv_rows(path: PathLike) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(lines))
