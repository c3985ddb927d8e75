"""Working-set accounting for the benchmark harness.

Primitives report the transient buffers they allocate to whichever
:class:`BufferMeter` is active in the current context. Outside a
``metered()`` block the hooks are a single context-variable lookup.
"""
from __future__ import annotations

import contextlib
import contextvars
import time

_ACTIVE: contextvars.ContextVar[BufferMeter | None] = contextvars.ContextVar(
    "ncsh_buffer_meter", default=None
)


class BufferMeter:
    def __init__(self):
        self.live = 0
        self.peak = 0

    def hold(self, octets: int) -> None:
        self.live += octets
        if self.live > self.peak:
            self.peak = self.live

    def release(self, octets: int) -> None:
        self.live -= octets


def active() -> BufferMeter | None:
    return _ACTIVE.get()


@contextlib.contextmanager
def metered(meter: BufferMeter | None = None):
    meter = meter if meter is not None else BufferMeter()
    token = _ACTIVE.set(meter)
    try:
        yield meter
    finally:
        _ACTIVE.reset(token)


@contextlib.contextmanager
def stage(profile: dict | None, name: str, meter: bool = False):
    """Time a block in microseconds into ``profile[name + '_us']``.

    With ``meter=True`` the block also runs under a fresh BufferMeter whose
    peak lands in ``profile[name + '_peak_octets']``.
    """
    if profile is None:
        yield None
        return
    ctx = metered() if meter else contextlib.nullcontext()
    with ctx as m:
        t0 = time.perf_counter_ns()
        try:
            yield m
        finally:
            profile[name + "_us"] = (time.perf_counter_ns() - t0) / 1000.0
            if m is not None:
                profile[name + "_peak_octets"] = m.peak
