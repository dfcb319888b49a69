"""Kernel backend selection.

Prefers the compiled extension and falls back to the NumPy implementation.
Set ``QLBN_KERNEL=python`` or ``QLBN_KERNEL=compiled`` to force a backend
(``compiled`` raises if the extension was not built).
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

_VALID = ("auto", "compiled", "python")


def _select():
    requested = os.environ.get("QLBN_KERNEL", "auto")
    if requested not in _VALID:
        raise RuntimeError(f"QLBN_KERNEL must be one of {_VALID}, got {requested!r}")
    if requested == "python":
        return _kernels_py, "python"
    try:
        from . import _kernels  # compiled extension, optional

        return _kernels, "compiled"
    except ImportError:
        if requested == "compiled":
            raise RuntimeError(
                "QLBN_KERNEL=compiled but the qlbn._kernels extension is not built"
            ) from None
        return _kernels_py, "python"


_impl, BACKEND = _select()


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name (for tests/benchmarks)."""
    backends: dict[str, object] = {"python": _kernels_py}
    try:
        from . import _kernels

        backends["compiled"] = _kernels
    except ImportError:
        pass
    return backends


def _as_vector(values) -> np.ndarray:
    return np.ascontiguousarray(values, dtype=np.float64)


def interference_sum(mags, phases) -> float:
    """Pairwise interference sum, pairs iterated in canonical index order."""
    return float(_impl.interference_sum(_as_vector(mags), _as_vector(phases)))


def block_scores(mags, phase_rows) -> np.ndarray:
    """Outcome-block score per probe row: sum(m^2) + 2 * interference."""
    mags = _as_vector(mags)
    rows = np.ascontiguousarray(phase_rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != mags.shape[0]:
        raise ValueError(
            f"phase rows have shape {rows.shape}, expected (k, {mags.shape[0]})"
        )
    return np.asarray(_impl.block_scores(mags, rows))


def lattice_block_extremes(mags, step: float, lattice: int):
    """Min/max block score over the gauge-fixed phase lattice, with witnesses."""
    low, low_phases, high, high_phases = _impl.lattice_block_extremes(
        _as_vector(mags), float(step), int(lattice)
    )
    return float(low), np.asarray(low_phases), float(high), np.asarray(high_phases)
