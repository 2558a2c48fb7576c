"""
Deliberate corruption of model data, used to show the checks can fail.

Faults are scoped with a context variable, so they never leak across
threads or outside the ``with`` block.  Two kinds exist:

``relation-sign``   flip the sign of one term of one relation generator
``pairing-entry``   flip one entry of the partition/subset pairing

With ``n``/``d`` left as None the fault hits every cell.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass

from m0nkappa.errors import InputError

KINDS = ("relation-sign", "pairing-entry")


@dataclass(frozen=True)
class Fault:
    kind: str
    n: int | None = None
    d: int | None = None
    index: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown fault kind {self.kind!r}; choose from {KINDS}")

    def hits(self, kind: str, n: int, d: int) -> bool:
        return self.kind == kind and self.n in (None, n) and self.d in (None, d)


_active: contextvars.ContextVar[Fault | None] = contextvars.ContextVar("m0nkappa_fault", default=None)


def active() -> Fault | None:
    return _active.get()


@contextlib.contextmanager
def injected(fault: Fault | None):
    token = _active.set(fault)
    try:
        yield fault
    finally:
        _active.reset(token)
