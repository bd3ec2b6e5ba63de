"""Spectra as multisets of complex numbers with tolerance-aware algebra."""
from __future__ import annotations

from typing import Iterable

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import MultisetMismatchError
from ..report import fmt_complex

#: absolute clustering/matching tolerance before scaling by the spectral radius
DEFAULT_TOL = 1e-6


def _scaled(tol: float, values: np.ndarray) -> float:
    radius = float(np.abs(values).max()) if len(values) else 0.0
    return tol * max(1.0, radius)


def _clusters(values: np.ndarray, tau: float) -> list:
    """Single-linkage clusters of ``values`` at distance ``tau``."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        close = np.nonzero(np.abs(values[i + 1:] - values[i]) <= tau)[0]
        for j in close:
            ri, rj = find(i), find(i + 1 + int(j))
            if ri != rj:
                parent[rj] = ri
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _sort_key(item):
    z = item[0]
    return (round(z.real, 9), round(z.imag, 9))


class SpectrumMultiset:
    """Distinct values with multiplicities.

    Values come from clustering raw eigenvalues; each cluster is represented
    by the mean of its members, which is far more accurate than the members
    themselves when a multiple root was split by rounding.
    """

    def __init__(self, items: Iterable = (), tol: float = DEFAULT_TOL):
        raw = [(complex(v), int(m)) for v, m in items]
        if any(m < 0 for _, m in raw):
            raise ValueError("multiplicities must be non-negative")
        merged = [(v, m) for v, m in raw if m > 0]
        self.tol = tol
        self.items = self._consolidate(merged, tol)

    @staticmethod
    def _consolidate(items: list, tol: float) -> list:
        if not items:
            return []
        vals = np.array([v for v, _ in items])
        mult = np.array([m for _, m in items])
        tau = _scaled(tol, vals)
        out = []
        for group in _clusters(vals, tau):
            w = mult[group]
            mean = complex(np.sum(vals[group] * w) / w.sum())
            out.append((mean, int(w.sum())))
        return sorted(out, key=_sort_key)

    @classmethod
    def from_values(cls, values, tol: float = DEFAULT_TOL) -> "SpectrumMultiset":
        return cls(((complex(v), 1) for v in np.ravel(values)), tol)

    @property
    def size(self) -> int:
        return sum(m for _, m in self.items)

    def __len__(self):
        return self.size

    def values(self) -> np.ndarray:
        """Expanded values, each cluster repeated by its multiplicity."""
        return np.array([v for v, m in self.items for _ in range(m)], dtype=complex)

    def multiplicity(self, z: complex, tol: float | None = None) -> int:
        tau = _scaled(self.tol if tol is None else tol, np.array([z] + [v for v, _ in self.items]))
        return sum(m for v, m in self.items if abs(v - z) <= tau)

    def scaled(self, s: int) -> "SpectrumMultiset":
        """Every multiplicity multiplied by ``s``."""
        return SpectrumMultiset(((v, m * s) for v, m in self.items), self.tol)

    def __add__(self, other: "SpectrumMultiset") -> "SpectrumMultiset":
        return SpectrumMultiset(list(self.items) + list(other.items), min(self.tol, other.tol))

    def __sub__(self, other: "SpectrumMultiset") -> "SpectrumMultiset":
        return self.subtract(other)

    def subtract(self, other: "SpectrumMultiset", tol: float | None = None) -> "SpectrumMultiset":
        """Remove every element of ``other``; each must find a partner within tolerance.

        Pairs are taken greedily, globally nearest first.
        """
        tol = self.tol if tol is None else tol
        mine = self.values()
        theirs = other.values()
        if len(theirs) == 0:
            return SpectrumMultiset(self.items, self.tol)
        tau = _scaled(tol, np.concatenate([mine, theirs]))
        if len(theirs) > len(mine):
            raise MultisetMismatchError(
                f"cannot remove {len(theirs)} elements from a multiset of size {len(mine)}")
        dist = np.abs(theirs[:, None] - mine[None, :])
        order = np.argsort(dist, axis=None, kind="stable")
        used_mine = np.zeros(len(mine), bool)
        used_theirs = np.zeros(len(theirs), bool)
        left = len(theirs)
        for flat in order:
            i, j = divmod(int(flat), len(mine))
            if used_theirs[i] or used_mine[j]:
                continue
            if dist[i, j] > tau:
                break
            used_theirs[i] = used_mine[j] = True
            left -= 1
            if left == 0:
                break
        if left:
            missing = [fmt_complex(z) for z in theirs[~used_theirs]]
            raise MultisetMismatchError(f"no partner within {tau:.3g} for {missing}")
        return SpectrumMultiset.from_values(mine[~used_mine], self.tol)

    def distance(self, other: "SpectrumMultiset") -> float:
        """Largest pair distance of the optimal matching (inf if sizes differ)."""
        a, b = self.values(), other.values()
        if len(a) != len(b):
            return float("inf")
        if len(a) == 0:
            return 0.0
        cost = np.abs(a[:, None] - b[None, :])
        r, c = linear_sum_assignment(cost)
        return float(cost[r, c].max())

    def matches(self, other: "SpectrumMultiset", tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        both = np.concatenate([self.values(), other.values()])
        return self.distance(other) <= _scaled(tol, both)

    def to_json(self) -> list:
        return [[v.real, v.imag, m] for v, m in self.items]

    @classmethod
    def from_json(cls, data, tol: float = DEFAULT_TOL) -> "SpectrumMultiset":
        return cls(((complex(re, im), m) for re, im, m in data), tol)

    def __repr__(self):
        return f"SpectrumMultiset({self})"

    def __str__(self):
        parts = []
        for v, m in self.items:
            z = fmt_complex(v, 10)
            parts.append(z if m == 1 else f"{z} (x{m})")
        return "{" + ", ".join(parts) + "}"


def eig(X, tol: float = DEFAULT_TOL, backend: str | None = None) -> SpectrumMultiset:
    """Spectrum of a square complex matrix as a clustered multiset."""
    from .solver import eigvals
    return SpectrumMultiset.from_values(eigvals(X, backend), tol)
