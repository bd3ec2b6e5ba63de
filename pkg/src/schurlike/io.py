"""JSON file formats for matrices, lambda-matrices, graphs and annihilators."""
from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from pathlib import Path
from typing import Union

import numpy as np

from .eigen_num import LambdaMatrix
from .errors import ParseError
from .exact_ring import (
    CC, QQ, QQI, ZZ, GaussianRational, Poly, RatFunc, RingMatrix, poly_ring, ratfunc_field,
)

VAR = "lam"

RING_NAMES = {
    "int": ZZ,
    "rat": QQ,
    "gauss-rat": QQI,
    "poly-rat": poly_ring(QQ, VAR),
    "ratfunc-rat": ratfunc_field(QQ, VAR),
    "complex64": CC,
}


def _ring_name(ring) -> str:
    for name, r in RING_NAMES.items():
        if r == ring:
            return name
    raise ParseError(f"ring {ring!r} has no file representation")


def _rat(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError("booleans are not numbers")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {x!r}") from exc
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise ParseError(f"expected an integer or 'p/q' string, got {x!r}")


def _pair(x):
    if not isinstance(x, (list, tuple)) or len(x) != 2:
        raise ParseError(f"expected a [re, im] pair, got {x!r}")
    return x


def _entry(name: str, x):
    ring = RING_NAMES[name]
    if name == "int":
        q = _rat(x)
        if q.denominator != 1:
            raise ParseError(f"{x!r} is not an integer")
        return int(q)
    if name == "rat":
        return QQ.convert(_rat(x))
    if name == "gauss-rat":
        if isinstance(x, (list, tuple)):
            re_, im = _pair(x)
            return GaussianRational(_rat(re_), _rat(im))
        return GaussianRational(_rat(x), 0)
    if name == "poly-rat":
        if not isinstance(x, list):
            x = [x]
        return ring([QQ.convert(_rat(c)) for c in x])
    if name == "ratfunc-rat":
        if isinstance(x, dict):
            num, den = x.get("num"), x.get("den", [1])
        elif isinstance(x, list) and len(x) == 2 and all(isinstance(p, list) for p in x):
            num, den = x
        else:
            num, den = (x if isinstance(x, list) else [x]), [1]
        P = ring.poly
        D = P([QQ.convert(_rat(c)) for c in den])
        if D.is_zero():
            raise ParseError("zero denominator")
        return RatFunc(ring, P([QQ.convert(_rat(c)) for c in num]), D)
    if isinstance(x, (list, tuple)):
        re_, im = _pair(x)
        return complex(float(re_), float(im))
    return complex(float(x))


def _unentry(name: str, x):
    def q(v):
        v = Fraction(v)
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    if name in ("int", "rat"):
        return q(x)
    if name == "gauss-rat":
        return [q(x.re), q(x.im)]
    if name == "poly-rat":
        return [q(c) for c in x.coeffs]
    if name == "ratfunc-rat":
        return {"num": [q(c) for c in x.num.coeffs], "den": [q(c) for c in x.den.coeffs]}
    z = complex(x)
    return [z.real, z.imag]


def matrix_from_dict(data: dict) -> RingMatrix:
    try:
        name = data["ring"]
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"matrix document needs ring, rows, cols, entries ({exc})") from exc
    if name not in RING_NAMES:
        raise ParseError(f"unknown ring {name!r}; expected one of {sorted(RING_NAMES)}")
    if not isinstance(entries, list):
        raise ParseError("entries must be a list")
    nested = len(entries) == rows and all(isinstance(r, list) and len(r) == cols for r in entries)
    # a flat list of list-valued entries wins when the two readings collide
    if nested and (len(entries) != rows * cols or name in ("int", "rat")):
        flat = [x for r in entries for x in r]
    else:
        flat = entries
    if len(flat) != rows * cols:
        raise ParseError(f"expected {rows * cols} entries, found {len(flat)}")
    vals = [_entry(name, x) for x in flat]
    ring = RING_NAMES[name]
    return RingMatrix(ring, [vals[i * cols:(i + 1) * cols] for i in range(rows)])


def matrix_to_dict(M: RingMatrix) -> dict:
    name = _ring_name(M.ring)
    return {"ring": name, "rows": M.rows, "cols": M.cols,
            "entries": [[_unentry(name, x) for x in r] for r in M.to_lists()]}


def _load(src: Union[str, os.PathLike, dict]) -> dict:
    if isinstance(src, dict):
        return src
    if not isinstance(src, (str, os.PathLike)):
        raise ParseError(f"expected a path or a document object, got {type(src).__name__}")
    try:
        text = Path(src).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {src}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{src}: {exc}") from exc


def read_matrix(src) -> RingMatrix:
    return matrix_from_dict(_load(src))


def write_matrix(M: RingMatrix, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(M), indent=1) + "\n")


def read_lambda_matrix(src) -> LambdaMatrix:
    try:
        return LambdaMatrix.from_json(_load(src))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad lambda-matrix document ({exc})") from exc


def write_lambda_matrix(L: LambdaMatrix, path) -> None:
    Path(path).write_text(json.dumps(L.to_json()) + "\n")


# -- graphs ----------------------------------------------------------------

def read_graph(src):
    """``(adjacency, SrgParams or None)`` from a graph document."""
    from .srg import SrgParams, from_edges
    data = _load(src)
    if not isinstance(data, dict):
        raise ParseError("graph document must be an object")
    try:
        if "adjacency" in data:
            A = np.array(data["adjacency"], dtype=int)
            n = int(data.get("n", A.shape[0]))
            if A.shape != (n, n):
                raise ParseError("adjacency must be n x n")
        else:
            n = int(data["n"])
            A = from_edges(n, [tuple(e) for e in data["edges"]], bool(data.get("directed", False)))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"graph document needs n and edges or adjacency ({exc})") from exc
    params = data.get("srg_params")
    if params is not None:
        try:
            if isinstance(params, dict):
                params = SrgParams(**{k: int(v) for k, v in params.items()})
            else:
                params = SrgParams(*[int(v) for v in params])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad srg_params ({exc})") from exc
    return A, params


def write_graph(A, path, params=None) -> None:
    A = np.asarray(A, dtype=int)
    doc = {"n": int(A.shape[0]), "adjacency": A.tolist()}
    if params is not None:
        doc["srg_params"] = list(params.as_tuple())
    Path(path).write_text(json.dumps(doc) + "\n")


# -- annihilators --------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*([a-zA-Z]\w*)\s*(?:\^\s*(\d+))?)?")


def parse_poly_string(text: str) -> list:
    """Ascending rational coefficients of a one-variable polynomial string.

    Accepts forms like ``x^3-2*x^2-5*x+6``, ``2x - 1/2`` or ``lam^2 - 1``.
    """
    if re.search(r"\w\s+\w", text):
        raise ParseError(f"missing operator in {text!r}")
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ParseError("empty polynomial")
    coeffs: dict = {}
    var = None
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group(2) is None and m.group(4) is None):
            raise ParseError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise ParseError(f"missing operator in {text!r} at {s[pos:]!r}")
        if m.group(2) is None and m.group(3) and m.group(3).startswith("*"):
            raise ParseError(f"dangling '*' in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(4):
            if var is not None and m.group(4) != var:
                raise ParseError(f"more than one variable in {text!r}")
            var = m.group(4)
            e = int(m.group(5)) if m.group(5) else 1
        else:
            if m.group(3):
                raise ParseError(f"cannot parse polynomial {text!r}")
            e = 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
    deg = max(coeffs)
    return [coeffs.get(i, Fraction(0)) for i in range(deg + 1)]


def _coeff_list(values) -> list:
    if not isinstance(values, list) or not values:
        raise ParseError("annihilator coefficients must be a non-empty list")
    return [_rat(v) for v in values]


def parse_annihilator(src: str, var: str = "x") -> Union[Poly, str]:
    """Annihilator from ``"auto"``, a file, an ascending list or a polynomial string.

    ``"auto"`` is returned unchanged; callers compute a minimal polynomial.
    """
    src = src.strip()
    if src == "auto":
        return src
    if os.path.isfile(src):
        text = Path(src).read_text().strip()
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            return parse_annihilator(text, var)
        if isinstance(data, dict):
            data = data.get("coefficients")
        if isinstance(data, str):
            return parse_annihilator(data, var)
        coeffs = _coeff_list(data)
    elif src.startswith("["):
        try:
            coeffs = _coeff_list(json.loads(src))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad coefficient list {src!r}") from exc
    elif re.fullmatch(r"[-+\d/\s]+(,[-+\d/\s]+)+", src):
        coeffs = [_rat(v) for v in src.split(",")]
    else:
        coeffs = parse_poly_string(src)
    R = poly_ring(QQ, var)
    p = R([QQ.convert(c) for c in coeffs])
    if p.is_zero():
        raise ParseError("the zero polynomial annihilates nothing useful")
    return p
