"""Rendering of the linguistic and network result tables (CSV, JSON, aligned text)."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Mapping

from .lingstats import CategoryStats, format_p
from .netmetrics import KINDS, TABLE_ROWS, GroupNetworkMetrics

LING_COLUMNS = ("category", "t1_pro", "t1_anti", "z1", "p1", "t2_pro", "t2_anti", "z2", "p2")
LING_HEADER = ("Lexical Category", "T1 (Pro)", "T1 (Anti)", "z-score (Z1)", "p-value (Z1)",
               "T2 (Pro)", "T2 (Anti)", "z-score (Z2)", "p-value (Z2)")


def atomic_write(path: str | Path, text: str) -> None:
    """Write via a temp file in the same directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _pct(x: float | None) -> str:
    return "-" if x is None else f"{100 * x:.2f}%"


def _z(x: float | None) -> str:
    return "-" if x is None else f"{x:.2f}"


def _num(x) -> str:
    return "" if x is None else repr(float(x))


def ling_rows(stats: Iterable[CategoryStats]) -> list[dict]:
    return [s.as_dict() for s in stats]


def ling_csv(stats: Iterable[CategoryStats]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(LING_COLUMNS)
    for s in stats:
        w.writerow([s.category_id, _num(s.t1_pro), _num(s.t1_anti), _num(s.z1), _num(s.p1),
                    _num(s.t2_pro), _num(s.t2_anti), _num(s.z2), _num(s.p2)])
    return buf.getvalue()


def _align(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for k, r in enumerate(rows):
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def ling_text(stats: Iterable[CategoryStats]) -> str:
    rows = [list(LING_HEADER)]
    for s in stats:
        rows.append([s.display_name, _pct(s.t1_pro), _pct(s.t1_anti), _z(s.z1), format_p(s.p1),
                     _pct(s.t2_pro), _pct(s.t2_anti), _z(s.z2), format_p(s.p2)])
    return _align(rows)


def net_table(metrics: Mapping[str, GroupNetworkMetrics]) -> list[dict]:
    """Rows of measures, one column per network kind."""
    out = []
    for label, attr in TABLE_ROWS:
        row = {"measure": label}
        for kind in KINDS:
            m = metrics.get(kind)
            row[kind] = None if m is None else getattr(m, attr)
        out.append(row)
    return out


def net_csv(metrics: Mapping[str, GroupNetworkMetrics]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["measure", *KINDS])
    for row in net_table(metrics):
        w.writerow([row["measure"], *(_num(row[k]) for k in KINDS)])
    return buf.getvalue()


def _sci(x: float | None, attr: str) -> str:
    if x is None:
        return "-"
    if attr.startswith("density"):
        return f"{x:.2g}"
    if attr.startswith("ei"):
        return f"{x:.3f}"
    return f"{x:.10f}"


def net_text(metrics: Mapping[str, GroupNetworkMetrics]) -> str:
    rows = [["Measure", "Mention Network", "Retweet Network", "Reply Network"]]
    for label, attr in TABLE_ROWS:
        rows.append([label] + [_sci(getattr(metrics[k], attr) if k in metrics else None, attr)
                               for k in KINDS])
    return _align(rows)
