"""Pure-Python (numpy) Hessenberg + shifted QR eigenvalue kernel.

Mirrors ``_qr_ext.pyx`` step for step so both backends return the same
eigenvalues up to rounding.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import SolverError

DEFLATE_EPS = 1e-12
ITER_FACTOR = 30


def hessenberg(a: np.ndarray) -> np.ndarray:
    """Upper Hessenberg form by Householder similarity transforms (in place copy)."""
    h = np.array(a, dtype=complex, copy=True)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x.copy()
        v[0] += phase * xnorm
        v /= np.linalg.norm(v)
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h


def _eig2(a, b, c, d):
    p = 0.5 * (a - d)
    disc = cmath.sqrt(p * p + b * c)
    m = 0.5 * (a + d)
    return m + disc, m - disc


def _wilkinson(a, b, c, d):
    l1, l2 = _eig2(a, b, c, d)
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


def _givens(f, g):
    """(c, s, r) with [[c, s], [-conj(s), c]] @ [f, g] = [r, 0], c real."""
    if g == 0:
        return 1.0, 0j, f
    if f == 0:
        return 0.0, g.conjugate() / abs(g), abs(g) + 0j
    af, ag = abs(f), abs(g)
    norm = math.hypot(af, ag)
    c = af / norm
    phase = f / af
    s = phase * g.conjugate() / norm
    return c, s, phase * norm


def hqr(h: np.ndarray, eps: float = DEFLATE_EPS, max_iter: int | None = None) -> np.ndarray:
    """Eigenvalues of an upper Hessenberg matrix by single-shift QR."""
    h = np.array(h, dtype=complex, copy=True)
    n = h.shape[0]
    out = np.zeros(n, dtype=complex)
    if n == 0:
        return out
    cap = ITER_FACTOR * n if max_iter is None else max_iter
    hnorm = float(np.abs(h).sum()) or 1.0
    hi = n - 1
    its = 0
    total = 0
    found = []
    while hi >= 0:
        # locate the active window [lo, hi]
        lo = hi
        while lo > 0:
            scale = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if scale == 0.0:
                scale = hnorm
            if abs(h[lo, lo - 1]) <= eps * scale:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            out[hi] = h[hi, hi]
            found.append(out[hi])
            hi -= 1
            its = 0
            continue
        if lo == hi - 1:
            l1, l2 = _eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            out[hi - 1], out[hi] = l1, l2
            found.extend((l1, l2))
            hi -= 2
            its = 0
            continue
        if total >= cap:
            raise SolverError(f"QR iteration did not converge after {total} steps", partial=found)
        if its in (10, 20):
            # exceptional shift breaks cycles
            mu = abs(h[hi, hi - 1].real) + abs(h[hi - 1, hi - 2].real) + h[hi, hi]
        else:
            mu = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        its += 1
        total += 1
        for k in range(lo, hi + 1):
            h[k, k] -= mu
        rots = []
        for k in range(lo, hi):
            c, s, r = _givens(h[k, k], h[k + 1, k])
            rots.append((c, s))
            h[k, k] = r
            h[k + 1, k] = 0.0
            x = h[k, k + 1:hi + 1].copy()
            y = h[k + 1, k + 1:hi + 1]
            h[k, k + 1:hi + 1] = c * x + s * y
            h[k + 1, k + 1:hi + 1] = -s.conjugate() * x + c * y
        for k, (c, s) in enumerate(rots, start=lo):
            top = min(k + 2, hi)
            x = h[lo:top + 1, k].copy()
            y = h[lo:top + 1, k + 1]
            h[lo:top + 1, k] = c * x + s.conjugate() * y
            h[lo:top + 1, k + 1] = -s * x + c * y
        for k in range(lo, hi + 1):
            h[k, k] += mu
    return out


def eigvals(a: np.ndarray, eps: float = DEFLATE_EPS) -> np.ndarray:
    return hqr(hessenberg(a), eps)
