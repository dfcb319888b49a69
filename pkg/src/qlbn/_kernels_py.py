"""NumPy implementation of the scoring kernels.

Used when the compiled extension is unavailable (or forced via
``QLBN_KERNEL=python``). Semantics match ``_kernels.pyx``: same probe
ordering, and lattice scans keep the first strictly-better point, so each
backend is fully deterministic (accumulation order differs between backends,
so near-ties may pick different, equally extremal witnesses).
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 15  # rows per vectorized slab; bounds peak memory


def interference_sum(mags: np.ndarray, phases: np.ndarray) -> float:
    """Sum of mags[i]*mags[j]*cos(phases[i]-phases[j]) over index pairs i < j."""
    n = mags.shape[0]
    if n < 2:
        return 0.0
    iu, ju = np.triu_indices(n, k=1)
    pair = mags[iu] * mags[ju]
    return float(np.cos(phases[iu] - phases[ju]) @ pair)


def block_scores(mags: np.ndarray, phase_rows: np.ndarray) -> np.ndarray:
    """Score sum(m^2) + 2*interference for each row of ``phase_rows``."""
    rows = phase_rows.shape[0]
    base = float(np.dot(mags, mags))
    n = mags.shape[0]
    if n < 2:
        return np.full(rows, base)
    iu, ju = np.triu_indices(n, k=1)
    pair = mags[iu] * mags[ju]
    out = np.empty(rows)
    for start in range(0, rows, _CHUNK):
        stop = min(start + _CHUNK, rows)
        block = phase_rows[start:stop]
        out[start:stop] = base + 2.0 * (np.cos(block[:, iu] - block[:, ju]) @ pair)
    return out


def lattice_block_extremes(
    mags: np.ndarray, step: float, lattice: int
) -> tuple[float, np.ndarray, float, np.ndarray]:
    """Extremes of the block score over the gauge-fixed phase lattice.

    The first phase is pinned to 0 (scores depend only on phase differences);
    the remaining ``n - 1`` phases range over ``{0, step, ..., (lattice-1)*step}``
    in product order with the last phase varying fastest. Returns
    ``(min_score, min_phases, max_score, max_phases)`` where ties keep the
    first lattice point scanned.
    """
    n = mags.shape[0]
    if n == 0:
        empty = np.zeros(0)
        return 0.0, empty, 0.0, empty
    if n == 1:
        point = np.zeros(1)
        score = float(mags[0] * mags[0])
        return score, point, score, point.copy()

    free = n - 1
    total = lattice**free
    weights = lattice ** np.arange(free - 1, -1, -1, dtype=np.int64)

    best_min = np.inf
    best_max = -np.inf
    min_flat = max_flat = 0
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        flat = np.arange(start, stop, dtype=np.int64)
        digits = (flat[:, None] // weights[None, :]) % lattice
        phases = np.concatenate(
            [np.zeros((stop - start, 1)), digits * step], axis=1
        )
        scores = block_scores(mags, phases)
        lo = int(np.argmin(scores))
        hi = int(np.argmax(scores))
        if scores[lo] < best_min:
            best_min = float(scores[lo])
            min_flat = start + lo
        if scores[hi] > best_max:
            best_max = float(scores[hi])
            max_flat = start + hi
    return (
        best_min,
        _decode(min_flat, weights, lattice, step),
        best_max,
        _decode(max_flat, weights, lattice, step),
    )


def _decode(flat: int, weights: np.ndarray, lattice: int, step: float) -> np.ndarray:
    digits = (flat // weights) % lattice
    return np.concatenate([[0.0], digits * step])
