"""Identity reports: both sides of every checked identity plus a verdict."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import IdentityViolation

#: relative tolerance used when an identity is compared over the inexact ring
INEXACT_RTOL = 1e-9


def _as_array(x):
    from .exact_ring import RingMatrix, to_complex
    if isinstance(x, RingMatrix):
        return x.to_numpy()
    if isinstance(x, np.ndarray):
        return x.astype(complex)
    return np.array([[to_complex(x)]])


def values_equal(lhs, rhs, exact: bool, rtol: float = INEXACT_RTOL) -> bool:
    if exact:
        return lhs == rhs
    a, b = _as_array(lhs), _as_array(rhs)
    if a.shape != b.shape:
        return False
    scale = max(1.0, float(np.linalg.norm(a)), float(np.linalg.norm(b)))
    return float(np.linalg.norm(a - b)) <= rtol * scale


def fmt_value(x) -> str:
    if isinstance(x, complex):
        return fmt_complex(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    s = str(x)
    return s.replace("\n", " ")


def fmt_complex(z: complex, digits: int = 12) -> str:
    re, im = z.real, z.imag
    if abs(re) < 5 * 10 ** (-digits - 1):
        re = 0.0
    if abs(im) < 5 * 10 ** (-digits - 1):
        im = 0.0
    if im == 0:
        return f"{re:.{digits}g}"
    return f"{re:.{digits}g}{'+' if im >= 0 else '-'}{abs(im):.{digits}g}i"


@dataclass
class Check:
    name: str
    lhs: Any
    rhs: Any
    holds: bool


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def compare(self, name: str, lhs, rhs, exact: bool = True, rtol: float = INEXACT_RTOL) -> bool:
        ok = values_equal(lhs, rhs, exact, rtol)
        self.checks.append(Check(name, lhs, rhs, ok))
        return ok

    def assert_true(self, name: str, ok: bool, lhs="", rhs=""):
        self.checks.append(Check(name, lhs, rhs, bool(ok)))
        return ok

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def require(self) -> "Report":
        if not self.passed:
            bad = [c.name for c in self.checks if not c.holds]
            raise IdentityViolation(f"{self.title}: violated {bad}", report=self)
        return self

    def to_text(self) -> str:
        lines = [f"report: {self.title}"]
        for k, v in self.data.items():
            lines.append(f"{k}: {fmt_value(v)}")
        for c in self.checks:
            lines.append(f"check: {c.name}")
            lines.append(f"  lhs: {fmt_value(c.lhs)}")
            lines.append(f"  rhs: {fmt_value(c.rhs)}")
            lines.append(f"  holds: {'yes' if c.holds else 'NO'}")
        lines.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)
