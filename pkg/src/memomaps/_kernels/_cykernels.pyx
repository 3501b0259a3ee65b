# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled pixel kernels: sliding disk-histogram statistics and bilinear
resampling.

The NumPy twins live in ``_pykernels``; outputs of the two backends must
stay bit-identical (see the conventions note there), so any change to
the floating-point expression structure here has to be mirrored.

The disk statistics use the classic snake-path sliding histogram: the
window walks the image boustrophedon and only the pixels entering and
leaving the disk update the histogram. Borders truncate the disk, so
every entering/leaving coordinate is bounds-checked.
"""

import numpy as np

from libc.math cimport floor
from libc.stdint cimport int32_t, uint8_t, uint16_t


cdef void _fill_half_widths(int radius, int32_t[::1] hw) noexcept nogil:
    # hw[k + radius] = floor(sqrt(radius^2 - k^2)), integer-exact
    cdef int k, s, j
    for k in range(-radius, radius + 1):
        s = radius * radius - k * k
        j = 0
        while (j + 1) * (j + 1) <= s:
            j += 1
        hw[k + radius] = j


cdef void _walk_filled(const uint16_t[:, ::1] q, int32_t[:, ::1] out,
                       int32_t[::1] hist, const int32_t[::1] hw,
                       int radius) noexcept nogil:
    cdef Py_ssize_t h = q.shape[0]
    cdef Py_ssize_t w = q.shape[1]
    cdef Py_ssize_t y = 0, x = 0, yy, xx
    cdef int dy, dx, hwv
    cdef int filled = 0
    cdef int direction = 1
    cdef uint16_t v

    for dy in range(-radius, radius + 1):
        yy = dy
        if yy < 0 or yy >= h:
            continue
        hwv = hw[dy + radius]
        for dx in range(-hwv, hwv + 1):
            xx = dx
            if xx < 0 or xx >= w:
                continue
            v = q[yy, xx]
            hist[v] += 1
            if hist[v] == 1:
                filled += 1
    out[0, 0] = filled

    while True:
        if direction == 1:
            while x + 1 < w:
                x += 1
                for dy in range(-radius, radius + 1):
                    yy = y + dy
                    if yy < 0 or yy >= h:
                        continue
                    hwv = hw[dy + radius]
                    xx = x + hwv
                    if xx < w:
                        v = q[yy, xx]
                        hist[v] += 1
                        if hist[v] == 1:
                            filled += 1
                    xx = x - 1 - hwv
                    if xx >= 0:
                        v = q[yy, xx]
                        hist[v] -= 1
                        if hist[v] == 0:
                            filled -= 1
                out[y, x] = filled
        else:
            while x > 0:
                x -= 1
                for dy in range(-radius, radius + 1):
                    yy = y + dy
                    if yy < 0 or yy >= h:
                        continue
                    hwv = hw[dy + radius]
                    xx = x - hwv
                    if xx >= 0:
                        v = q[yy, xx]
                        hist[v] += 1
                        if hist[v] == 1:
                            filled += 1
                    xx = x + 1 + hwv
                    if xx < w:
                        v = q[yy, xx]
                        hist[v] -= 1
                        if hist[v] == 0:
                            filled -= 1
                out[y, x] = filled
        if y + 1 == h:
            break
        y += 1
        for dx in range(-radius, radius + 1):
            xx = x + dx
            if xx < 0 or xx >= w:
                continue
            hwv = hw[dx + radius]
            yy = y + hwv
            if yy < h:
                v = q[yy, xx]
                hist[v] += 1
                if hist[v] == 1:
                    filled += 1
            yy = y - 1 - hwv
            if yy >= 0:
                v = q[yy, xx]
                hist[v] -= 1
                if hist[v] == 0:
                    filled -= 1
        out[y, x] = filled
        direction = -direction


cdef void _walk_shannon(const uint16_t[:, ::1] q, double[:, ::1] out,
                        int32_t[::1] hist, const int32_t[::1] hw,
                        int radius, int bins,
                        const double[::1] tab) noexcept nogil:
    cdef Py_ssize_t h = q.shape[0]
    cdef Py_ssize_t w = q.shape[1]
    cdef Py_ssize_t y = 0, x = 0, yy, xx
    cdef int dy, dx, hwv, b, c
    cdef int pop = 0
    cdef int direction = 1
    cdef double acc
    cdef uint16_t v

    for dy in range(-radius, radius + 1):
        yy = dy
        if yy < 0 or yy >= h:
            continue
        hwv = hw[dy + radius]
        for dx in range(-hwv, hwv + 1):
            xx = dx
            if xx < 0 or xx >= w:
                continue
            hist[q[yy, xx]] += 1
            pop += 1
    acc = 0.0
    for b in range(bins):
        c = hist[b]
        if c > 0:
            acc = acc + c * tab[c]
    out[0, 0] = tab[pop] - acc / pop

    while True:
        if direction == 1:
            while x + 1 < w:
                x += 1
                for dy in range(-radius, radius + 1):
                    yy = y + dy
                    if yy < 0 or yy >= h:
                        continue
                    hwv = hw[dy + radius]
                    xx = x + hwv
                    if xx < w:
                        hist[q[yy, xx]] += 1
                        pop += 1
                    xx = x - 1 - hwv
                    if xx >= 0:
                        hist[q[yy, xx]] -= 1
                        pop -= 1
                acc = 0.0
                for b in range(bins):
                    c = hist[b]
                    if c > 0:
                        acc = acc + c * tab[c]
                out[y, x] = tab[pop] - acc / pop
        else:
            while x > 0:
                x -= 1
                for dy in range(-radius, radius + 1):
                    yy = y + dy
                    if yy < 0 or yy >= h:
                        continue
                    hwv = hw[dy + radius]
                    xx = x - hwv
                    if xx >= 0:
                        hist[q[yy, xx]] += 1
                        pop += 1
                    xx = x + 1 + hwv
                    if xx < w:
                        hist[q[yy, xx]] -= 1
                        pop -= 1
                acc = 0.0
                for b in range(bins):
                    c = hist[b]
                    if c > 0:
                        acc = acc + c * tab[c]
                out[y, x] = tab[pop] - acc / pop
        if y + 1 == h:
            break
        y += 1
        for dx in range(-radius, radius + 1):
            xx = x + dx
            if xx < 0 or xx >= w:
                continue
            hwv = hw[dx + radius]
            yy = y + hwv
            if yy < h:
                hist[q[yy, xx]] += 1
                pop += 1
            yy = y - 1 - hwv
            if yy >= 0:
                hist[q[yy, xx]] -= 1
                pop -= 1
        acc = 0.0
        for b in range(bins):
            c = hist[b]
            if c > 0:
                acc = acc + c * tab[c]
        out[y, x] = tab[pop] - acc / pop
        direction = -direction


def disk_filled_counts(q, int radius, int bins):
    """Count of distinct quantized values inside each pixel's disk (int32)."""
    cdef const uint16_t[:, ::1] qv = q
    out_arr = np.empty((q.shape[0], q.shape[1]), dtype=np.int32)
    cdef int32_t[:, ::1] out = out_arr
    cdef int32_t[::1] hist = np.zeros(bins, dtype=np.int32)
    cdef int32_t[::1] hw = np.empty(2 * radius + 1, dtype=np.int32)
    with nogil:
        _fill_half_widths(radius, hw)
        _walk_filled(qv, out, hist, hw, radius)
    return out_arr


def disk_shannon_map(q, int radius, int bins, log2tab):
    """Shannon entropy (bits) of the local value histogram at each pixel."""
    cdef const uint16_t[:, ::1] qv = q
    cdef const double[::1] tab = log2tab
    out_arr = np.empty((q.shape[0], q.shape[1]), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef int32_t[::1] hist = np.zeros(bins, dtype=np.int32)
    cdef int32_t[::1] hw = np.empty(2 * radius + 1, dtype=np.int32)
    with nogil:
        _fill_half_widths(radius, hw)
        _walk_shannon(qv, out, hist, hw, radius, bins, tab)
    return out_arr


cdef inline double _lerp1(double a, double b, double f) noexcept nogil:
    cdef double v, lo, hi
    if f == 1.0:
        return b
    v = a + f * (b - a)
    lo = a if a < b else b
    hi = a if a > b else b
    if v < lo:
        v = lo
    if v > hi:
        v = hi
    return v


cdef void _fill_coords(Py_ssize_t src_n, Py_ssize_t dst_n,
                       Py_ssize_t[::1] lo, double[::1] frac) noexcept nogil:
    cdef Py_ssize_t i, l
    cdef double pos
    cdef double hi_clip = <double> (src_n - 1)
    cdef Py_ssize_t lo_max = src_n - 2 if src_n >= 2 else 0
    for i in range(dst_n):
        pos = ((i + 0.5) * src_n) / dst_n - 0.5
        if pos < 0.0:
            pos = 0.0
        if pos > hi_clip:
            pos = hi_clip
        l = <Py_ssize_t> floor(pos)
        if l < 0:
            l = 0
        if l > lo_max:
            l = lo_max
        lo[i] = l
        frac[i] = pos - l


def resize_bilinear_u8(img, Py_ssize_t out_w, Py_ssize_t out_h):
    """Bilinear resample of an 8-bit image, rounded back to uint8."""
    cdef const uint8_t[:, ::1] src = img
    cdef Py_ssize_t in_h = src.shape[0]
    cdef Py_ssize_t in_w = src.shape[1]
    out_arr = np.empty((out_h, out_w), dtype=np.uint8)
    cdef uint8_t[:, ::1] out = out_arr
    cdef Py_ssize_t[::1] x0 = np.empty(out_w, dtype=np.intp)
    cdef Py_ssize_t[::1] y0 = np.empty(out_h, dtype=np.intp)
    cdef double[::1] fx = np.empty(out_w, dtype=np.float64)
    cdef double[::1] fy = np.empty(out_h, dtype=np.float64)
    cdef Py_ssize_t i, j, ya, yb, xa, xb
    cdef double a, b, c, d, v
    with nogil:
        _fill_coords(in_w, out_w, x0, fx)
        _fill_coords(in_h, out_h, y0, fy)
        for i in range(out_h):
            ya = y0[i]
            yb = ya + 1 if ya + 1 < in_h else in_h - 1
            for j in range(out_w):
                xa = x0[j]
                xb = xa + 1 if xa + 1 < in_w else in_w - 1
                a = <double> src[ya, xa]
                b = <double> src[ya, xb]
                c = <double> src[yb, xa]
                d = <double> src[yb, xb]
                v = _lerp1(_lerp1(a, b, fx[j]), _lerp1(c, d, fx[j]), fy[i])
                out[i, j] = <uint8_t> floor(v + 0.5)
    return out_arr


def upscale_grid_f64(grid, Py_ssize_t out_w, Py_ssize_t out_h):
    """Bilinear resample of a float64 grid (no overshoot, exact anchors)."""
    cdef const double[:, ::1] src = grid
    cdef Py_ssize_t in_h = src.shape[0]
    cdef Py_ssize_t in_w = src.shape[1]
    out_arr = np.empty((out_h, out_w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t[::1] x0 = np.empty(out_w, dtype=np.intp)
    cdef Py_ssize_t[::1] y0 = np.empty(out_h, dtype=np.intp)
    cdef double[::1] fx = np.empty(out_w, dtype=np.float64)
    cdef double[::1] fy = np.empty(out_h, dtype=np.float64)
    cdef Py_ssize_t i, j, ya, yb, xa, xb
    cdef double v
    with nogil:
        _fill_coords(in_w, out_w, x0, fx)
        _fill_coords(in_h, out_h, y0, fy)
        for i in range(out_h):
            ya = y0[i]
            yb = ya + 1 if ya + 1 < in_h else in_h - 1
            for j in range(out_w):
                xa = x0[j]
                xb = xa + 1 if xa + 1 < in_w else in_w - 1
                v = _lerp1(_lerp1(src[ya, xa], src[ya, xb], fx[j]),
                           _lerp1(src[yb, xa], src[yb, xb], fx[j]), fy[i])
                out[i, j] = v
    return out_arr
