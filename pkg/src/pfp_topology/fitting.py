from __future__ import annotations

from typing import Iterable

import numpy as np


def fit_power_law(
    points: Iterable[tuple[float, float]], x_range: tuple[float, float] | None = None
) -> float | None:
    """Exponent of ``y ~ x**a`` by least squares on ``(ln x, ln y)``.

    Only points with ``x`` inside the closed ``x_range`` and ``y > 0`` are used.
    Returns None when fewer than three points survive or all surviving ``x``
    coincide.
    """
    pts = np.asarray(list(points), dtype=float).reshape(-1, 2)
    x, y = pts[:, 0], pts[:, 1]
    keep = (x > 0) & (y > 0)
    if x_range is not None:
        lo, hi = x_range
        # small slack so that e.g. r/N == 0.1 computed in floating point is kept
        keep &= (x >= lo * (1 - 1e-12)) & (x <= hi * (1 + 1e-12))
    if keep.sum() < 3:
        return None
    lx, ly = np.log(x[keep]), np.log(y[keep])
    dx = lx - lx.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        return None
    return float(dx @ (ly - ly.mean()) / sxx)
