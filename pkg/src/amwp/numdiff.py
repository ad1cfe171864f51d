"""Central differences with Richardson extrapolation.

Works for any number type with field arithmetic (float, complex, Fraction,
mpmath).  Vector-valued functions return flat sequences; the derivative is
taken elementwise.
"""

from __future__ import annotations

from typing import Callable, Sequence


def _nested(fun, x, idx, h, cache):
    # mixed partial along idx by nested symmetric differences; stencil offsets
    # are integer multiples of h, cached by offset vector
    offsets = {(): 1}
    for a in idx:
        nxt = {}
        for off, w in offsets.items():
            for sgn in (1, -1):
                o = list(off) if off else [0] * len(x)
                o[a] += sgn
                o = tuple(o)
                nxt[o] = nxt.get(o, 0) + sgn * w
        offsets = nxt
    total = None
    for off, w in offsets.items():
        if w == 0:
            continue
        key = (off, h)
        val = cache.get(key)
        if val is None:
            pt = [xi + oi * h for xi, oi in zip(x, off)] if off else list(x)
            val = cache[key] = list(fun(pt))
        if total is None:
            total = [w * v for v in val]
        else:
            total = [t + w * v for t, v in zip(total, val)]
    scale = (2 * h) ** len(idx)
    return [t / scale for t in total]


def partial(
    fun: Callable[[Sequence], Sequence],
    x: Sequence,
    idx: Sequence[int],
    h,
    levels: int = 2,
    cache: dict | None = None,
) -> list:
    """Mixed partial derivative ``d^n fun / dx_idx[0] ... dx_idx[n-1]`` at ``x``.

    Base step ``h`` and ``levels`` halvings; each level removes the next even
    power of ``h`` from the error.  Pass a shared ``cache`` dict to reuse
    function values between calls at the same ``x``.
    """
    cache = {} if cache is None else cache
    if not idx:
        return list(fun(list(x)))
    table = []
    step = h
    for _ in range(levels + 1):
        table.append(_nested(fun, x, idx, step, cache))
        step = step / 2
    for j in range(1, levels + 1):
        fac = 4 ** j - 1
        table = [[a + (a - b) / fac for a, b in zip(table[i], table[i - 1])] for i in range(1, len(table))]
    return table[-1]
