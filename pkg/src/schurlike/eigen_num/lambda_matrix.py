"""Matrix polynomials ``L(lam) = sum_k L_k lam^k`` and their companion linearization."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import DegeneratePencilError, ShapeError
from .multiset import DEFAULT_TOL, SpectrumMultiset
from .solver import eigvals


class LambdaMatrix:
    """Square lambda-matrix with complex ``s x s`` coefficients in ascending degree."""

    def __init__(self, coefficients: Sequence):
        coeffs = [np.atleast_2d(np.asarray(c, dtype=complex)) for c in coefficients]
        if not coeffs:
            raise ShapeError("a lambda-matrix needs at least one coefficient")
        s = coeffs[0].shape
        if s[0] != s[1] or any(c.shape != s for c in coeffs):
            raise ShapeError("coefficients must be square and of equal size")
        self.coeffs = coeffs

    @property
    def size(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def monic(self) -> bool:
        return np.array_equal(self.coeffs[-1], np.eye(self.size))

    def __call__(self, lam: complex) -> np.ndarray:
        acc = np.zeros((self.size, self.size), dtype=complex)
        for c in reversed(self.coeffs):
            acc = acc * lam + c
        return acc

    def det_at(self, lam: complex) -> complex:
        return complex(np.linalg.det(self(lam)))

    def allclose(self, other: "LambdaMatrix", atol: float = 1e-12) -> bool:
        return (self.degree == other.degree
                and all(np.allclose(a, b, atol=atol, rtol=0) for a, b in zip(self.coeffs, other.coeffs)))

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "degree": self.degree,
            "coefficients": [[[[z.real, z.imag] for z in row] for row in c] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LambdaMatrix":
        coeffs = [np.array([[complex(*z) if isinstance(z, (list, tuple)) else complex(z) for z in row]
                            for row in c]) for c in data["coefficients"]]
        lm = cls(coeffs)
        if lm.size != data.get("size", lm.size) or lm.degree != data.get("degree", lm.degree):
            raise ShapeError("declared size/degree do not match the coefficients")
        return lm

    def __repr__(self):
        return f"LambdaMatrix(size={self.size}, degree={self.degree}, monic={self.monic})"


@dataclass
class Linearization:
    """``Z0 w = lam Z1 w``; ``Z1`` is ``None`` for monic input (ordinary problem)."""

    Z0: np.ndarray
    Z1: Optional[np.ndarray]

    @property
    def ordinary(self) -> bool:
        return self.Z1 is None


def linearize(L: LambdaMatrix) -> Linearization:
    """Block companion form: first block row ``(-L_{d-1}, ..., -L_0)``, identities below."""
    d, s = L.degree, L.size
    if d == 0:
        raise DegeneratePencilError("a constant lambda-matrix has no linearization")
    Z0 = np.zeros((d * s, d * s), dtype=complex)
    for j in range(d):
        Z0[:s, j * s:(j + 1) * s] = -L.coeffs[d - 1 - j]
    Z0[s:, :-s] = np.eye((d - 1) * s)
    if L.monic:
        return Linearization(Z0, None)
    Z1 = np.eye(d * s, dtype=complex)
    Z1[:s, :s] = L.coeffs[d]
    return Linearization(Z0, Z1)


def latent_roots(L: LambdaMatrix, tol: float = DEFAULT_TOL) -> SpectrumMultiset:
    """Latent roots with multiplicity.

    Non-monic input is normalized by the inverse of its leading coefficient;
    a singular leading coefficient is rejected since no generalized
    eigensolver is provided.
    """
    if L.degree == 0:
        return SpectrumMultiset((), tol)
    if not L.monic:
        lead = L.coeffs[-1]
        if np.linalg.cond(lead) > 1e12:
            raise DegeneratePencilError("leading coefficient is singular")
        inv = np.linalg.inv(lead)
        L = LambdaMatrix([inv @ c for c in L.coeffs[:-1]] + [np.eye(L.size)])
    return SpectrumMultiset.from_values(eigvals(linearize(L).Z0), tol)


def companion(coeffs: Sequence) -> np.ndarray:
    """Companion matrix of a monic scalar polynomial given ascending coefficients."""
    c = np.asarray(coeffs, dtype=complex)
    if len(c) < 2:
        raise DegeneratePencilError("a constant polynomial has no companion matrix")
    if c[-1] != 1:
        c = c / c[-1]
    return linearize(LambdaMatrix([[[z]] for z in c])).Z0


def poly_roots(coeffs: Sequence, tol: float = DEFAULT_TOL) -> SpectrumMultiset:
    """Roots of a scalar polynomial (ascending coefficients) via its companion matrix."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    if len(c) == 0:
        raise DegeneratePencilError("the zero polynomial has no finite root set")
    if len(c) == 1:
        return SpectrumMultiset((), tol)
    return SpectrumMultiset.from_values(eigvals(companion(c)), tol)
