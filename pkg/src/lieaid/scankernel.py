"""Batched exhaustive rank-check kernel over prime fields.

Scans one representative z per projective class of GF(p)^n, forms the
trimmed M(z) together with all candidate columns v_c(z), and decides for
every candidate whether v_c(z) lies in the column space of M(z).  All
candidate columns ride along one Gauss-Jordan elimination per point, and
points are processed in vectorized batches of packed small-integer
matrices.

The scan order is fixed (stratified by the position of the first nonzero
coordinate, trailing digits big-endian base p), chunks split at fixed
boundaries, and failures aggregate by minimum scan index, so results are
identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

BATCH = 1 << 15


def projective_count(p: int, n: int) -> int:
    """Number of projective classes of nonzero vectors in GF(p)^n."""
    return (p**n - 1) // (p - 1)


@dataclass
class ScanSystem:
    """Trimmed evaluation tables for the scan.

    mtab: (n, rows*mcols) float64, M(z).flat = z @ mtab (before reduction mod p);
    vtab: (n, rows*ncands) float64 likewise for the candidate columns.
    Entries are small non-negative integers, so float64 products are exact.
    """

    p: int
    n: int
    rows: int
    mcols: int
    ncands: int
    mtab: np.ndarray
    vtab: np.ndarray


def _stratum_bounds(p: int, n: int) -> np.ndarray:
    sizes = [p ** (n - 1 - f) for f in range(n)]
    return np.concatenate(([0], np.cumsum(np.array(sizes, dtype=np.int64))))


def decode_points(p: int, n: int, indices: np.ndarray) -> np.ndarray:
    """Scan indices -> projective representatives with first nonzero = 1."""
    bounds = _stratum_bounds(p, n)
    out = np.zeros((len(indices), n), dtype=np.int64)
    for f in range(n):
        mask = (indices >= bounds[f]) & (indices < bounds[f + 1])
        if not mask.any():
            continue
        out[mask, f] = 1
        rem = indices[mask] - bounds[f]
        for pos in range(n - 1, f, -1):
            out[mask, pos] = rem % p
            rem = rem // p
    return out


def decode_point(p: int, n: int, index: int) -> list[int]:
    return [int(v) for v in decode_points(p, n, np.array([index], dtype=np.int64))[0]]


def _batch_fails(a: np.ndarray, mcols: int, p: int, inv: np.ndarray) -> np.ndarray:
    """Gauss-Jordan on [M | V] batches; pivots only in the first mcols columns.

    a: (B, rows, mcols + ncands), entries in [0, p); modified in place.
    Returns fails[b, c] = candidate column c escapes the column space of M.

    Row updates add (p - factor) * pivot_row and then fold the range
    [0, p + (p-1)^2] back with compare-and-subtract sweeps; integer modulo
    on the full array is far slower than these masked subtractions.
    """
    b, rows, _ = a.shape
    row_idx = np.arange(rows)
    bidx = np.arange(b)
    next_pivot = np.zeros(b, dtype=np.int64)
    is_pivot_row = np.zeros((b, rows), dtype=bool)
    buf = np.empty_like(a)
    for col in range(mcols):
        eligible = (a[:, :, col] != 0) & (row_idx[None, :] >= next_pivot[:, None])
        has = eligible.any(axis=1)
        if not has.any():
            continue
        src = np.where(has, np.argmax(eligible, axis=1), 0)
        dst = np.where(has, next_pivot, 0)
        tmp = a[bidx, src, :].copy()
        a[bidx, src, :] = a[bidx, dst, :]
        a[bidx, dst, :] = tmp
        piv = a[bidx, dst, :]
        scale = np.where(has, inv[piv[:, col].astype(np.int64)], 1).astype(a.dtype)
        piv = (piv * scale[:, None]) % p
        a[bidx, dst, :] = piv
        factors = (p - a[:, :, col]) % p
        factors[bidx, dst] = 0
        factors[~has, :] = 0
        np.multiply(factors[:, :, None], piv[:, None, :], out=buf)
        a += buf
        hi = p + (p - 1) * (p - 1)
        while hi >= p:
            np.subtract(a, p, out=a, where=a >= p)
            hi -= p
        is_pivot_row[bidx[has], dst[has]] = True
        next_pivot += has
    resid = (a[:, :, mcols:] != 0) & (~is_pivot_row)[:, :, None]
    return resid.any(axis=1)


def _build_batch(sys: ScanSystem, z: np.ndarray) -> np.ndarray:
    """[M(z) | V(z)] for a batch of points, reduced mod p, packed small ints."""
    p = sys.p
    bsz = z.shape[0]
    dtype = np.int8 if (p - 1) * (p - 1) + p < 127 else np.int32
    zf = z.astype(np.float64)
    mb = (zf @ sys.mtab).astype(np.int16)
    mb %= p
    mb = mb.astype(dtype).reshape(bsz, sys.rows, sys.mcols)
    if sys.ncands:
        vb = (zf @ sys.vtab).astype(np.int16)
        vb %= p
        vb = vb.astype(dtype).reshape(bsz, sys.rows, sys.ncands)
    else:
        vb = np.zeros((bsz, sys.rows, 0), dtype=dtype)
    return np.concatenate((mb, vb), axis=2)


def scan_range(sys: ScanSystem, start: int, end: int, batch: int = BATCH) -> np.ndarray:
    """Scan indices [start, end); per-candidate min failing index, -1 if none."""
    first_fail = np.full(sys.ncands, -1, dtype=np.int64)
    inv = np.array([0] + [pow(x, sys.p - 2, sys.p) for x in range(1, sys.p)])
    pos = start
    while pos < end:
        hi = min(pos + batch, end)
        idx = np.arange(pos, hi, dtype=np.int64)
        z = decode_points(sys.p, sys.n, idx)
        a = _build_batch(sys, z)
        fails = _batch_fails(a, sys.mcols, sys.p, inv)
        hit = fails.any(axis=0)
        for c in np.nonzero(hit)[0]:
            if first_fail[c] == -1:
                first_fail[c] = pos + int(np.argmax(fails[:, c]))
        pos = hi
    return first_fail


def _scan_worker(args):
    sys, start, end = args
    return scan_range(sys, start, end)


def scan_all(sys: ScanSystem, threads: int = 1, limit: int | None = None):
    """Full projective scan; returns (per-candidate first fail index, #points)."""
    total = projective_count(sys.p, sys.n) if limit is None else limit
    if sys.ncands == 0:
        return np.zeros(0, dtype=np.int64), total
    if threads <= 1 or total <= 4 * BATCH:
        return scan_range(sys, 0, total), total
    step = max(BATCH, -(-total // (threads * 8)))
    step = -(-step // BATCH) * BATCH  # batch-aligned: identical work split
    tasks = [(sys, pos, min(pos + step, total)) for pos in range(0, total, step)]
    first_fail = np.full(sys.ncands, -1, dtype=np.int64)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for res in pool.map(_scan_worker, tasks):
            mask = (res != -1) & ((first_fail == -1) | (res < first_fail))
            first_fail[mask] = res[mask]
    return first_fail, total
