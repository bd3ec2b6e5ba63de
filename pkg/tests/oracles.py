"""Independent reference computations used to freeze expected values.

None of these touch the package under test.
"""
from fractions import Fraction
from itertools import permutations

import numpy as np


def leibniz_det(rows):
    """Permutation-sum determinant over any ring whose elements support + and *."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


def cofactor_adjugate(rows):
    n = len(rows)
    if n == 1:
        return [[1]]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            out[j][i] = (-1) ** (i + j) * leibniz_det(minor)
    return out


def np_int_matmul(a, b):
    return (np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)).tolist()


def durand_kerner(coeffs, iters: int = 2000, tol: float = 1e-15):
    """Roots of a polynomial with ascending coefficients by Weierstrass iteration.

    Starting points are the usual (0.4 + 0.9i)^k directions scaled to a Cauchy
    radius.
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    c = c / c[-1]
    d = len(c) - 1
    if d < 1:
        return np.zeros(0, complex)
    radius = 1 + np.max(np.abs(c[:-1]))
    z = radius * (0.4 + 0.9j) ** np.arange(d) / abs(0.4 + 0.9j) ** np.arange(d)
    desc = c[::-1]
    for _ in range(iters):
        pz = np.polyval(desc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        step = pz / np.prod(diff, axis=1)
        z = z - step
        if np.max(np.abs(step)) < tol * max(1.0, np.max(np.abs(z))):
            break
    return z


def match_distance(a, b) -> float:
    """Max distance of the optimal pairing (brute force via sorting by assignment)."""
    from scipy.optimize import linear_sum_assignment
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    assert len(a) == len(b)
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max()) if len(a) else 0.0


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def frac_matrix(rows):
    return [[Fraction(x) for x in r] for r in rows]
