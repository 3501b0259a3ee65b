"""NumPy implementations of the pixel kernels.

This is the fallback backend used when the compiled extension is not
available. Every function must return bit-identical output to its
compiled twin in ``_cykernels``; tests/test_kernel_parity.py holds both
sides to that, so keep the floating-point expression structure of the
two files in sync when editing either one.

Conventions shared by both backends:

* images and grids are C-contiguous 2-D arrays indexed ``[row, col]``
* disk membership is inclusive: ``dx*dx + dy*dy <= radius*radius``
* neighbourhoods are truncated at the image border (no padding values)
* resampling maps output pixel ``i`` to source position
  ``((i + 0.5) * src_n) / dst_n - 0.5``, clamped to ``[0, src_n - 1]``,
  and linear interpolation is computed as ``a + f * (b - a)`` clamped to
  ``[min(a, b), max(a, b)]`` with ``f == 1`` short-circuited to ``b`` so
  anchor values are reproduced exactly
"""

from __future__ import annotations

import math

import numpy as np


def _half_widths(radius: int) -> list[int]:
    """Row half-width of the inclusive disk for each dy in [-radius, radius]."""
    return [math.isqrt(radius * radius - dy * dy) for dy in range(-radius, radius + 1)]


def _disk_counts(indicator: np.ndarray, radius: int, half_widths: list[int]) -> np.ndarray:
    """Per-pixel count of set indicator pixels inside the (truncated) disk.

    Zero-padding the indicator gives border truncation for free: padded
    pixels contribute nothing to any count.
    """
    h, w = indicator.shape
    r = radius
    padded = np.zeros((h + 2 * r, w + 2 * r), dtype=np.int32)
    padded[r : r + h, r : r + w] = indicator
    csum = np.zeros((h + 2 * r, w + 2 * r + 1), dtype=np.int32)
    np.cumsum(padded, axis=1, out=csum[:, 1:])
    out = np.zeros((h, w), dtype=np.int32)
    for dy, hw in zip(range(-r, r + 1), half_widths):
        rows = csum[r + dy : r + dy + h]
        out += rows[:, r + hw + 1 : r + hw + 1 + w]
        out -= rows[:, r - hw : r - hw + w]
    return out


def disk_filled_counts(q: np.ndarray, radius: int, bins: int) -> np.ndarray:
    """Count of distinct quantized values inside each pixel's disk (int32)."""
    hws = _half_widths(radius)
    filled = np.zeros(q.shape, dtype=np.int32)
    for b in np.unique(q):
        filled += _disk_counts(q == b, radius, hws) > 0
    return filled


def disk_shannon_map(q: np.ndarray, radius: int, bins: int, log2tab: np.ndarray) -> np.ndarray:
    """Shannon entropy (bits) of the local value histogram at each pixel.

    Computed as ``log2(pop) - sum_b(c_b * log2(c_b)) / pop`` with every
    log2 read from the shared lookup table, accumulating bins in
    ascending value order; zero-count terms add exactly +0.0, so
    skipping absent bins does not change the result.
    """
    hws = _half_widths(radius)
    pop = _disk_counts(np.ones(q.shape, dtype=np.int32), radius, hws)
    acc = np.zeros(q.shape, dtype=np.float64)
    for b in np.unique(q):
        cnt = _disk_counts(q == b, radius, hws)
        acc += cnt * log2tab[cnt]
    return log2tab[pop] - acc / pop


def _axis_coords(src_n: int, dst_n: int) -> tuple[np.ndarray, np.ndarray]:
    pos = ((np.arange(dst_n, dtype=np.float64) + 0.5) * src_n) / dst_n - 0.5
    np.clip(pos, 0.0, float(src_n - 1), out=pos)
    lo = np.floor(pos).astype(np.int64)
    np.clip(lo, 0, max(src_n - 2, 0), out=lo)
    return lo, pos - lo


def _lerp(a: np.ndarray, b: np.ndarray, f: np.ndarray) -> np.ndarray:
    v = a + f * (b - a)
    v = np.minimum(np.maximum(v, np.minimum(a, b)), np.maximum(a, b))
    return np.where(f == 1.0, b, v)


def _bilinear(src: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    in_h, in_w = src.shape
    y0, fy = _axis_coords(in_h, out_h)
    x0, fx = _axis_coords(in_w, out_w)
    y1 = np.minimum(y0 + 1, in_h - 1)
    x1 = np.minimum(x0 + 1, in_w - 1)
    fx = fx[None, :]
    fy = fy[:, None]
    top = _lerp(src[np.ix_(y0, x0)], src[np.ix_(y0, x1)], fx)
    bottom = _lerp(src[np.ix_(y1, x0)], src[np.ix_(y1, x1)], fx)
    return _lerp(top, bottom, fy)


def resize_bilinear_u8(img: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    """Bilinear resample of an 8-bit image, rounded back to uint8."""
    values = _bilinear(img.astype(np.float64), out_w, out_h)
    return np.floor(values + 0.5).astype(np.uint8)


def upscale_grid_f64(grid: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    """Bilinear resample of a float64 grid (no overshoot, exact anchors)."""
    return _bilinear(grid, out_w, out_h)
