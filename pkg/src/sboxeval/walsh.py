"""Walsh-Hadamard spectra of S-boxes.

The spectrum entry W(u, v) is the signed correlation count
sum_x (-1)^{g_v(x) XOR <u, x>}; one fixed output mask v gives one spectrum
column of 2^n entries.  Four routes compute it:

* ``walsh_direct``      -- literal evaluation of the defining sum (the oracle)
* ``fwht_rowmajor``     -- butterfly over strided columns of an x-major store
* ``fwht_transposed``   -- same butterfly over contiguous rows of a mask-major
                           store (one array sweep per column)
* ``fwht_fused``        -- transposed transform that also harvests each
                           column's max |W| on the final butterfly pass,
                           yielding per-component nonlinearities without a
                           second spectrum scan

All variants produce bit-identical integer spectra; they differ only in
memory layout and what is retained.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from .memory import check_budget, spectrum_allocations
from .sbox import SBox, memory_estimate, polarity_row, polarity_truth_table


@dataclass(frozen=True)
class WalshSpectrum:
    """Mask-major spectrum: rows[v-1][u] = W(u, v) for v = 1..2^m-1."""

    n: int
    m: int
    rows: np.ndarray = field(repr=False)

    def value(self, u: int, v: int) -> int:
        if v == 0:
            # The zero mask is not stored; its spectrum is the constant row.
            return (1 << self.n) if u == 0 else 0
        return int(self.rows[v - 1, u])


@dataclass(frozen=True)
class ColumnMaxima:
    """Per-component nonlinearities: values[v-1] = (2^n - max_u |W(u,v)|) / 2."""

    n: int
    m: int
    values: np.ndarray = field(repr=False)


def walsh_direct(s: SBox, u: int, v: int) -> int:
    """Evaluate one spectrum entry straight from the definition.

    Sums (-1)^{parity(v AND S(x)) XOR parity(u AND x)} over all 2^n inputs.
    Exact and exponential; exists purely as the correctness oracle for the
    transform variants.
    """
    if not (0 <= u < (1 << s.n)):
        raise IndexError(f"input mask {u} out of range 0..{(1 << s.n) - 1}")
    if not (0 <= v < (1 << s.m)):
        raise IndexError(f"output mask {v} out of range 0..{(1 << s.m) - 1}")
    x = np.arange(1 << s.n, dtype=np.uint32)
    exponent = (np.bitwise_count(s.table & np.uint32(v)) ^ np.bitwise_count(x & np.uint32(u))) & np.uint8(1)
    ones = int(np.sum(exponent, dtype=np.int64))
    return (1 << s.n) - 2 * ones


def fwht_column_in_place(col: np.ndarray) -> tuple[np.ndarray, int]:
    """In-place Walsh-Hadamard butterfly over one length-2^k signed column.

    For each stage j = 1, 2, ..., len/2 and every index pair (i, i+j) with
    (i AND j) == 0, replaces (a, b) with (a + b, a - b).  Accepts any
    uniformly strided 1-D view, so it runs identically on a contiguous
    mask-major row or a strided x-major column.

    Returns the column and the maximum absolute entry, collected from the
    values finished during the last stage (after which every entry holds its
    final spectrum value).
    """
    length = col.shape[0]
    if length == 0 or (length & (length - 1)) != 0:
        raise ValueError(f"column length must be a power of two, got {length}")
    if length == 1:
        return col, abs(int(col[0]))
    max_abs = 0
    j = 1
    while j < length:
        pairs = col.reshape(-1, 2, j)
        lo = pairs[:, 0, :]
        hi = pairs[:, 1, :]
        # (a, b) <- (a + b, a - b) without a scratch column:
        #   hi = a - b,  lo = 2a - (a - b) = a + b
        np.subtract(lo, hi, out=hi)
        lo *= 2
        np.subtract(lo, hi, out=lo)
        if 2 * j == length:
            max_abs = max(int(np.abs(lo).max()), int(np.abs(hi).max()))
        j <<= 1
    return col, max_abs


def column_nonlinearity(pw: int, max_abs: int) -> int:
    """(2^n - max|W|) / 2; the difference is always even for true spectra."""
    diff = pw - max_abs
    if diff & 1:
        raise AssertionError(
            f"odd spectrum gap {diff}: column is not a genuine Walsh column"
        )
    return diff >> 1


def build_polarity_xmajor(s: SBox, max_bytes: int | None = None) -> np.ndarray:
    """x-major polarity store: wt[x][v-1], rows indexed by input, 2^m-1 wide.

    This is the layout whose per-column transform strides across the whole
    matrix; kept only so the layout cost is measurable.
    """
    check_budget(memory_estimate(s.n, s.m, mode="retain"), max_bytes)
    masks = np.arange(1, 1 << s.m, dtype=np.uint32)
    wt = np.empty((1 << s.n, (1 << s.m) - 1), dtype=np.int32)
    for x in range(1 << s.n):
        row = wt[x, :]
        row[:] = np.bitwise_count(masks & s.table[x]) & np.uint8(1)
        row *= -2
        row += 1
    return wt


def transform_xmajor_in_place(wt: np.ndarray) -> None:
    """Butterfly every spectrum column of an x-major store (strided access)."""
    for z in range(wt.shape[1]):
        fwht_column_in_place(wt[:, z])


def transform_rows_in_place(
    rows: np.ndarray, maxima_out: np.ndarray | None = None
) -> None:
    """Butterfly every row of a mask-major store (contiguous access).

    When ``maxima_out`` is given, row v-1's finished max |W| is folded into
    maxima_out[v-1] as the component nonlinearity.
    """
    pw = rows.shape[1]
    for idx in range(rows.shape[0]):
        _, max_abs = fwht_column_in_place(rows[idx])
        if maxima_out is not None:
            maxima_out[idx] = column_nonlinearity(pw, max_abs)


def fwht_rowmajor(
    s: SBox,
    max_bytes: int | None = None,
    timings: dict | None = None,
) -> WalshSpectrum:
    """Baseline transform: mask-major access over an x-major store.

    Every butterfly stage walks a strided column of the big matrix, touching
    one cache line per element.  Deliberately kept as the slow reference
    point for the layout benchmark; results are bit-identical to the other
    variants.
    """
    t0 = time.perf_counter()
    wt = build_polarity_xmajor(s, max_bytes)
    spectrum_allocations.charge(wt.nbytes)
    try:
        t1 = time.perf_counter()
        transform_xmajor_in_place(wt)
        t2 = time.perf_counter()
        rows = np.ascontiguousarray(wt.T)
    finally:
        spectrum_allocations.release(wt.nbytes)
    if timings is not None:
        timings["build_s"] = t1 - t0
        timings["transform_s"] = t2 - t1
    return WalshSpectrum(s.n, s.m, rows)


def fwht_transposed(
    s: SBox,
    max_bytes: int | None = None,
    timings: dict | None = None,
) -> WalshSpectrum:
    """Transform over the mask-major store: each column is one contiguous row."""
    t0 = time.perf_counter()
    ptt = polarity_truth_table(s, max_bytes)
    spectrum_allocations.charge(ptt.rows.nbytes)
    try:
        t1 = time.perf_counter()
        transform_rows_in_place(ptt.rows)
        t2 = time.perf_counter()
    finally:
        spectrum_allocations.release(ptt.rows.nbytes)
    if timings is not None:
        timings["build_s"] = t1 - t0
        timings["transform_s"] = t2 - t1
    return WalshSpectrum(s.n, s.m, ptt.rows)


def fwht_fused(
    s: SBox,
    mode: str = "retain",
    max_bytes: int | None = None,
    timings: dict | None = None,
) -> tuple[WalshSpectrum | None, ColumnMaxima]:
    """Transposed transform fused with per-column max tracking.

    Retain mode keeps the whole spectrum and returns it alongside the maxima;
    stream mode reuses a single column buffer, so memory stays at one column
    regardless of m, and only the maxima survive.
    """
    if mode not in ("retain", "stream"):
        raise ValueError(f"mode must be 'retain' or 'stream', got {mode!r}")
    maxima = np.zeros((1 << s.m) - 1, dtype=np.int64)
    t0 = time.perf_counter()
    if mode == "retain":
        ptt = polarity_truth_table(s, max_bytes)
        spectrum_allocations.charge(ptt.rows.nbytes)
        try:
            t1 = time.perf_counter()
            transform_rows_in_place(ptt.rows, maxima_out=maxima)
            t2 = time.perf_counter()
        finally:
            spectrum_allocations.release(ptt.rows.nbytes)
        spectrum = WalshSpectrum(s.n, s.m, ptt.rows)
    else:
        check_budget(memory_estimate(s.n, s.m, mode="stream", workers=1), max_bytes)
        buf = np.empty(1 << s.n, dtype=np.int32)
        spectrum_allocations.charge(buf.nbytes)
        try:
            t1 = time.perf_counter()
            pw = 1 << s.n
            for v in range(1, 1 << s.m):
                polarity_row(s, v, out=buf)
                _, max_abs = fwht_column_in_place(buf)
                maxima[v - 1] = column_nonlinearity(pw, max_abs)
            t2 = time.perf_counter()
        finally:
            spectrum_allocations.release(buf.nbytes)
        spectrum = None
    if timings is not None:
        timings["build_s"] = t1 - t0
        timings["transform_s"] = t2 - t1
    return spectrum, ColumnMaxima(s.n, s.m, maxima)


def write_spectrum(w: WalshSpectrum, stream: IO[str]) -> None:
    """Dump a spectrum as text: header "n m", one line per mask v ascending."""
    stream.write(f"{w.n} {w.m}\n")
    for row in w.rows:
        stream.write(" ".join(str(int(e)) for e in row))
        stream.write("\n")
