"""Opt-in recorder of intermediate objects, used by the property suites.

Disabled by default; ``with recording() as log:`` collects every event
emitted by the library while the block runs.
"""
from __future__ import annotations

import contextlib
from collections import defaultdict

_active: list = []


def record(kind: str, **payload) -> None:
    for log in _active:
        log[kind].append(payload)


@contextlib.contextmanager
def recording():
    log: dict = defaultdict(list)
    _active.append(log)
    try:
        yield log
    finally:
        _active.remove(log)
