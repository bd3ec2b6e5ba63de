"""Dense nonsymmetric eigensolver front end.

The compiled kernel is used when it was built; ``SCHURLIKE_BACKEND=python``
forces the numpy fallback.
"""
from __future__ import annotations

import os

import numpy as np

from ..errors import ShapeError
from . import _qr_py

DEFLATE_EPS = _qr_py.DEFLATE_EPS

try:
    from . import _qr_ext
except ImportError:  # extension not built
    _qr_ext = None

_BACKENDS = {"python": _qr_py}
if _qr_ext is not None:
    _BACKENDS["compiled"] = _qr_ext


def _default_backend() -> str:
    forced = os.environ.get("SCHURLIKE_BACKEND", "").strip().lower()
    if forced:
        if forced not in _BACKENDS:
            raise ImportError(f"SCHURLIKE_BACKEND={forced!r} is not available "
                              f"(have {sorted(_BACKENDS)})")
        return forced
    return "compiled" if "compiled" in _BACKENDS else "python"


BACKEND = _default_backend()


def available_backends() -> list:
    return sorted(_BACKENDS)


def eigvals(X, backend: str | None = None, eps: float = DEFLATE_EPS) -> np.ndarray:
    """All eigenvalues of a square complex matrix (Hessenberg + shifted QR)."""
    a = np.asarray(X, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"eigenvalues need a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    kernel = _BACKENDS[backend or BACKEND]
    return np.asarray(kernel.eigvals(a, eps))


def null_vector(X) -> np.ndarray:
    """Right singular vector of the smallest singular value (a numeric kernel vector)."""
    _, _, vh = np.linalg.svd(np.asarray(X, dtype=complex))
    return vh[-1].conj()
