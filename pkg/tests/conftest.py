from __future__ import annotations

import time
from contextlib import contextmanager

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

CRITERIA: dict = {}


@contextmanager
def criterion(number: int, title: str, budget: float | None = None):
    """Record the outcome of one acceptance criterion; the block's time counts against ``budget``."""
    start = time.perf_counter()
    ok, detail = False, ""
    try:
        yield
        elapsed = time.perf_counter() - start
        detail = f"{elapsed:.3f} s"
        if budget is not None:
            detail += f" (budget {budget:g} s)"
            assert elapsed < budget, f"took {elapsed:.3f} s, budget {budget} s"
        ok = True
    except AssertionError as e:
        detail = str(e).splitlines()[0] if str(e) else "assertion failed"
        raise
    finally:
        prev = CRITERIA.get(number)
        CRITERIA[number] = (title, ok and (prev is None or prev[1]), detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")
