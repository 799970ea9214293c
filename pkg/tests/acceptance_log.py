"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

import time
from contextlib import contextmanager

LINES: list[str] = []


@contextmanager
def criterion(number, title, limit_s):
    start = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        LINES.append(f"criterion {number} FAIL  {title} ({elapsed:.2f}s): "
                     f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
        print(LINES[-1])
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit_s if limit_s else True
    extra = f" {detail['note']}" if "note" in detail else ""
    LINES.append(f"criterion {number} {'PASS' if ok else 'FAIL'}  {title} "
                 f"({elapsed:.2f}s{f' < {limit_s}s' if limit_s else ''}){extra}")
    print(LINES[-1])
    assert ok, f"criterion {number} exceeded its {limit_s}s budget ({elapsed:.2f}s)"
