"""Cooperative time and size budgets shared by the long-running algorithms."""

from __future__ import annotations

import contextlib
import contextvars
import os
import time


class CapacityLimit(Exception):
    """A configured resource bound (time, points, branches) was exceeded."""


_deadline: contextvars.ContextVar[float | None] = contextvars.ContextVar("jsonsub_deadline", default=None)

DEFAULT_POINT_BUDGET = 10 ** 6
ONEOF_BRANCH_LIMIT = 16
REPEAT_BOUND = 1000


def point_budget() -> int:
    raw = os.environ.get("JSONSUB_POINT_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_POINT_BUDGET


@contextlib.contextmanager
def time_budget(seconds: float | None):
    """Within the block, ``tick()`` raises CapacityLimit once ``seconds`` have elapsed."""
    if seconds is None:
        yield
        return
    token = _deadline.set(time.monotonic() + seconds)
    try:
        yield
    finally:
        _deadline.reset(token)


def tick() -> None:
    limit = _deadline.get()
    if limit is not None and time.monotonic() > limit:
        raise CapacityLimit("time budget exhausted")
