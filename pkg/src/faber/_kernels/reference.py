"""Pure-numpy reference implementations of the numeric hot loops.

These are the import-time fallback when the compiled extension is missing
and the ground truth the compiled kernels are tested against.
"""

from __future__ import annotations

import numpy as np


def ppoly_eval(breaks: np.ndarray, coefs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Evaluate a local-monomial piecewise polynomial at the points ``x``.

    Half-open segments: ``breaks[i] <= x < breaks[i+1]`` uses row ``i``;
    anything outside ``[breaks[0], breaks[-1])`` evaluates to zero.
    """
    x = np.asarray(x, dtype=float)
    idx = np.searchsorted(breaks, x, side="right") - 1
    valid = (idx >= 0) & (idx < coefs.shape[0])
    safe = np.where(valid, idx, 0)
    t = x - breaks[safe]
    out = np.zeros_like(x)
    for c in range(coefs.shape[1] - 1, -1, -1):
        out = out * t + coefs[safe, c]
    out[~valid] = 0.0
    return out


def stride2_correlate(values: np.ndarray, taps: np.ndarray, axis: int) -> np.ndarray:
    """Correlate with ``taps`` at stride 2 along ``axis``.

    ``out[..., k, ...] = sum_t taps[t] * values[..., 2k + t, ...]`` for every
    ``k`` with the window fully inside the array.
    """
    values = np.moveaxis(values, axis, -1)
    n = values.shape[-1]
    t = taps.size
    count = (n - t) // 2 + 1
    if count <= 0:
        raise ValueError("input too short for the correlation window")
    out = np.zeros(values.shape[:-1] + (count,))
    for i in range(t):
        out += taps[i] * values[..., i : i + 2 * count - 1 : 2]
    return np.moveaxis(out, -1, axis)


def banded_contract(values: np.ndarray, axis: int, idx: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Contract one axis of ``values`` against a banded evaluation table.

    ``idx`` and ``weights`` have shape ``(G, w)``; output entry ``g`` along
    the contracted axis is ``sum_t weights[g, t] * values[..., idx[g, t], ...]``.
    Entries with ``idx < 0`` or ``idx >= values.shape[axis]`` are skipped.
    """
    moved = np.moveaxis(values, axis, 0)
    size = moved.shape[0]
    out = np.zeros((idx.shape[0],) + moved.shape[1:])
    for t in range(idx.shape[1]):
        cols = idx[:, t]
        ok = (cols >= 0) & (cols < size)
        if not np.any(ok):
            continue
        safe = np.where(ok, cols, 0)
        w = np.where(ok, weights[:, t], 0.0)
        out += w.reshape((-1,) + (1,) * (moved.ndim - 1)) * moved[safe]
    return np.moveaxis(out, 0, axis)
