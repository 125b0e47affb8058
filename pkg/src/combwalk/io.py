"""CSV/JSON writers for distributions, optimiser traces and summaries.

Floats are written with 17 significant digits so values survive a round
trip exactly.  Files are written to a temporary sibling and renamed into
place, so a reader never sees a partial file.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

OUTPUT_DIR_ENV = "COMBWALK_OUTPUT_DIR"


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))


def atomic_write_text(path, text: str) -> Path:
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
    return path


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def distribution_csv(codec, probs, qualities=None) -> str:
    """``index,object,probability,quality`` for every rank."""
    probs = np.asarray(probs, dtype=float)
    rows = []
    for r, p in enumerate(probs):
        q = "" if qualities is None else fmt(qualities[r])
        rows.append((r, codec.format(codec.unrank(r)), fmt(p), q))
    return _csv_text(("index", "object", "probability", "quality"), rows)


def write_distribution_csv(path, codec, probs, qualities=None) -> Path:
    return atomic_write_text(path, distribution_csv(codec, probs, qualities))


def trace_csv(runs) -> str:
    """``eval_id,start_id,gamma_1..gamma_p,t_1..t_p,expectation``.

    Accepts one run or a sequence (nested runs of growing ``p``); a ``p``
    column is added when the runs have different depths.
    """
    if not isinstance(runs, (list, tuple)):
        runs = [runs]
    p_max = max(r.p for r in runs)
    mixed = len({r.p for r in runs}) > 1
    header = ["eval_id", "start_id"]
    if mixed:
        header.insert(0, "p")
    header += [f"gamma_{i}" for i in range(1, p_max + 1)]
    header += [f"t_{i}" for i in range(1, p_max + 1)]
    header.append("expectation")
    rows = []
    for run in runs:
        pad = [""] * (p_max - run.p)
        for e in run.trace:
            row = [e.eval_id, e.start_id]
            if mixed:
                row.insert(0, run.p)
            row += [fmt(g) for g in e.gammas] + pad
            row += [fmt(t) for t in e.times] + pad
            row.append(fmt(e.expectation))
            rows.append(row)
    return _csv_text(header, rows)


def write_trace_csv(path, runs) -> Path:
    return atomic_write_text(path, trace_csv(runs))


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path, obj) -> Path:
    return atomic_write_text(path, dumps_json(obj))


def table_csv(rows: list[dict], columns) -> str:
    return _csv_text(columns, [[row[c] for c in columns] for row in rows])
