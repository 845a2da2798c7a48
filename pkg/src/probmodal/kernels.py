"""Backend selection for the subset kernels.

The compiled backend (``_ckernels``) is used when it was built and the
values fit comfortably in int64; otherwise the pure-Python backend runs.
Set ``PROBMODAL_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

try:
    if os.environ.get("PROBMODAL_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

# Keep a few bits of headroom below 2**63 for sums of two values.
_LIMIT = 1 << 61


def _fits(values, n, factor=1):
    peak = max(max(values), -min(values)) * factor
    # zeta/mobius intermediates are bounded by 2**n times the peak
    return peak << n < _LIMIT


def _pick(values, n, factor=1):
    if _ckernels is not None and _fits(values, n, factor):
        return _ckernels
    return _pykernels


def zeta(values, n):
    return _pick(values, n).zeta(values, n)


def mobius(values, n):
    return _pick(values, n).mobius(values, n)


def monotonicity_violation(values, n):
    return _pick(values, n).monotonicity_violation(values, n)


def superadditivity_violation(values, n):
    return _pick(values, n).superadditivity_violation(values, n)


def additivity_violation(values, n):
    return _pick(values, n).additivity_violation(values, n)


def minimal_positive(values, n):
    return _pick(values, n).minimal_positive(values, n)


def threshold_family(values, n, scale, bound, strict=False):
    """Bitset of masks whose value satisfies ``value * scale >= bound``."""
    if abs(bound) < _LIMIT and abs(scale) < _LIMIT:
        backend = _pick(values, n, abs(scale))
    else:
        backend = _pykernels
    return backend.threshold_family(values, n, scale, bound, strict)
