# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Hessenberg + shifted QR eigenvalue kernel (same algorithm as _qr_py)."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, hypot, fabs, copysign

from ..errors import SolverError

cnp.import_array()

ctypedef double complex cplx


cdef inline double cabs_(cplx z) nogil:
    return hypot(z.real, z.imag)


cdef inline cplx csqrt_(cplx z) nogil:
    cdef double x = z.real, y = z.imag, r, t
    if x == 0.0 and y == 0.0:
        return 0.0
    r = hypot(x, y)
    t = sqrt(0.5 * (r + fabs(x)))
    if x >= 0.0:
        return t + 1j * (y / (2.0 * t))
    return fabs(y) / (2.0 * t) + 1j * copysign(t, y)


cdef inline cplx conj_(cplx z) nogil:
    return z.real - 1j * z.imag


cdef void _hessenberg(cplx[:, ::1] h, cplx[::1] v) nogil:
    cdef Py_ssize_t n = h.shape[0], k, i, j, m
    cdef double xnorm, vnorm
    cdef cplx x0, phase, acc
    for k in range(n - 2):
        xnorm = 0.0
        for i in range(k + 1, n):
            xnorm += h[i, k].real * h[i, k].real + h[i, k].imag * h[i, k].imag
        xnorm = sqrt(xnorm)
        if xnorm == 0.0:
            continue
        x0 = h[k + 1, k]
        if cabs_(x0) != 0.0:
            phase = x0 / cabs_(x0)
        else:
            phase = 1.0
        m = n - k - 1
        for i in range(m):
            v[i] = h[k + 1 + i, k]
        v[0] = v[0] + phase * xnorm
        vnorm = 0.0
        for i in range(m):
            vnorm += v[i].real * v[i].real + v[i].imag * v[i].imag
        vnorm = sqrt(vnorm)
        for i in range(m):
            v[i] = v[i] / vnorm
        # left: rows k+1.., columns k..
        for j in range(k, n):
            acc = 0.0
            for i in range(m):
                acc = acc + conj_(v[i]) * h[k + 1 + i, j]
            for i in range(m):
                h[k + 1 + i, j] = h[k + 1 + i, j] - 2.0 * v[i] * acc
        # right: all rows, columns k+1..
        for i in range(n):
            acc = 0.0
            for j in range(m):
                acc = acc + h[i, k + 1 + j] * v[j]
            for j in range(m):
                h[i, k + 1 + j] = h[i, k + 1 + j] - 2.0 * acc * conj_(v[j])
        for i in range(k + 2, n):
            h[i, k] = 0.0


cdef inline void _eig2(cplx a, cplx b, cplx c, cplx d, cplx* l1, cplx* l2) nogil:
    cdef cplx p = 0.5 * (a - d)
    cdef cplx disc = csqrt_(p * p + b * c)
    cdef cplx m = 0.5 * (a + d)
    l1[0] = m + disc
    l2[0] = m - disc


def hessenberg(a):
    h = np.array(a, dtype=np.complex128, order="C", copy=True)
    n = h.shape[0]
    work = np.zeros(max(n, 1), dtype=np.complex128)
    cdef cplx[:, ::1] hv = h
    cdef cplx[::1] wv = work
    with nogil:
        _hessenberg(hv, wv)
    return h


def hqr(h_in, double eps=1e-12, max_iter=None):
    h = np.array(h_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = h.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    if n == 0:
        return out
    cdef cplx[:, ::1] H = h
    cdef cplx[::1] ev = out
    cdef long cap = 30 * n if max_iter is None else max_iter
    cdef double hnorm = 0.0, scale, af, ag, nrm, c
    cdef Py_ssize_t i, j, k, lo, hi = n - 1, top
    cdef long its = 0, total = 0
    cdef cplx mu, l1, l2, f, g, s, x, y, ph
    rot_c = np.zeros(n, dtype=np.float64)
    rot_s = np.zeros(n, dtype=np.complex128)
    cdef double[::1] rc = rot_c
    cdef cplx[::1] rs = rot_s
    found = np.zeros(n, dtype=bool)
    cdef cnp.uint8_t[::1] fd = found.view(np.uint8)
    for i in range(n):
        for j in range(n):
            hnorm += cabs_(H[i, j])
    if hnorm == 0.0:
        hnorm = 1.0
    while hi >= 0:
        lo = hi
        while lo > 0:
            scale = cabs_(H[lo - 1, lo - 1]) + cabs_(H[lo, lo])
            if scale == 0.0:
                scale = hnorm
            if cabs_(H[lo, lo - 1]) <= eps * scale:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            ev[hi] = H[hi, hi]
            fd[hi] = 1
            hi -= 1
            its = 0
            continue
        if lo == hi - 1:
            _eig2(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi], &l1, &l2)
            ev[hi - 1] = l1
            ev[hi] = l2
            fd[hi - 1] = 1
            fd[hi] = 1
            hi -= 2
            its = 0
            continue
        if total >= cap:
            raise SolverError(f"QR iteration did not converge after {total} steps",
                              partial=list(out[found]))
        if its == 10 or its == 20:
            mu = fabs(H[hi, hi - 1].real) + fabs(H[hi - 1, hi - 2].real) + H[hi, hi]
        else:
            _eig2(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi], &l1, &l2)
            mu = l1 if cabs_(l1 - H[hi, hi]) <= cabs_(l2 - H[hi, hi]) else l2
        its += 1
        total += 1
        with nogil:
            for k in range(lo, hi + 1):
                H[k, k] = H[k, k] - mu
            for k in range(lo, hi):
                f = H[k, k]
                g = H[k + 1, k]
                if g == 0:
                    c = 1.0
                    s = 0.0
                elif f == 0:
                    c = 0.0
                    s = conj_(g) / cabs_(g)
                    H[k, k] = cabs_(g)
                else:
                    af = cabs_(f)
                    ag = cabs_(g)
                    nrm = hypot(af, ag)
                    c = af / nrm
                    ph = f / af
                    s = ph * conj_(g) / nrm
                    H[k, k] = ph * nrm
                rc[k] = c
                rs[k] = s
                H[k + 1, k] = 0.0
                for j in range(k + 1, hi + 1):
                    x = H[k, j]
                    y = H[k + 1, j]
                    H[k, j] = c * x + s * y
                    H[k + 1, j] = -conj_(s) * x + c * y
            for k in range(lo, hi):
                c = rc[k]
                s = rs[k]
                top = k + 2 if k + 2 < hi else hi
                for i in range(lo, top + 1):
                    x = H[i, k]
                    y = H[i, k + 1]
                    H[i, k] = c * x + conj_(s) * y
                    H[i, k + 1] = -s * x + c * y
            for k in range(lo, hi + 1):
                H[k, k] = H[k, k] + mu
    return out


def eigvals(a, double eps=1e-12):
    return hqr(hessenberg(a), eps)
