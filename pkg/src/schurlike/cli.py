"""Batch command-line front end.

Every command prints ``key: value`` lines followed by identity reports and a
final ``verdict:`` line.  The exit status is 0 only when the verdict is PASS;
bad input exits with 2.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .eigen_num import DEFAULT_TOL, spectrum_identity_converse, spectrum_identity_forward
from .errors import NotAnnihilatingError, ParseError, SchurLikeError
from .exact_ring import (
    ANNIHILATE_TOL, QQ, ZZ, PolyRing, RatFuncField, RingMatrix, minimal_polynomial,
)
from .io import parse_annihilator, read_graph, read_matrix

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    inputs: list
    split: Optional[int] = None
    tol_match: Optional[float] = None
    tol_annihilate: float = ANNIHILATE_TOL
    tol_cluster: float = DEFAULT_TOL
    out: Optional[str] = None
    verbose: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self):
        for name in ("tol_match", "tol_annihilate", "tol_cluster"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ParseError(f"--{name.replace('_', '-')} must be positive")


class Output:
    def __init__(self):
        self.lines: list = []

    def kv(self, key: str, value) -> None:
        self.lines.append(f"{key}: {value}")

    def block(self, text: str) -> None:
        # only the final line of a run is a bare verdict
        self.lines.extend("report " + ln if ln.startswith("verdict:") else ln
                          for ln in text.splitlines())

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _verdict(out: Output, ok: bool) -> int:
    out.kv("verdict", "PASS" if ok else "FAIL")
    return EXIT_PASS if ok else EXIT_FAIL


def _constant_matrix(M: RingMatrix) -> np.ndarray:
    if isinstance(M.ring, (PolyRing, RatFuncField)):
        raise ParseError("spectral commands need a constant matrix (int, rat, gauss-rat, complex64)")
    return M.to_numpy()


def _annihilator(src: str, block: RingMatrix, out: Output):
    a = parse_annihilator(src)
    if isinstance(a, str):
        if not block.ring.exact:
            raise ParseError("annihilator 'auto' needs an exact ring")
        a = minimal_polynomial(block)
        out.kv("annihilator source", "minimal polynomial")
    else:
        out.kv("annihilator source", "given")
    out.kv("annihilator", str(a))
    if block.ring.exact:
        X = block.convert(QQ) if block.ring == ZZ else block
        if not X.apply_poly(a).is_zero():
            raise NotAnnihilatingError(f"{a} does not annihilate the block exactly")
    return a


def _print_reduction(out: Output, red, names):
    known, latent, removed, recon, direct = names
    out.kv(known, red.known)
    out.kv(latent, red.latent)
    out.kv(removed, red.removed)
    out.kv(recon, red.reconstructed)
    out.kv(direct, red.direct)
    out.kv("max deviation", f"{red.deviation:.3e}")


def cmd_reduce_forward(cfg: RunConfig, out: Output) -> int:
    M = read_matrix(cfg.inputs[0])
    n = cfg.split
    if not M.is_square() or not 1 <= n < M.rows:
        raise ParseError(f"--split must satisfy 1 <= N < {M.rows} for a square matrix")
    out.kv("command", "reduce-forward")
    out.kv("matrix", f"{M.rows}x{M.cols} over {M.ring!r}")
    out.kv("split", n)
    if isinstance(M.ring, (PolyRing, RatFuncField)):
        return _forward_ratfunc(cfg, M, out)
    a = _annihilator(cfg.extra["annihilator"], M[:n, :n], out)
    tol = cfg.tol_cluster
    red = spectrum_identity_forward(_constant_matrix(M), n, a, tol=tol,
                                    tol_annihilate=cfg.tol_annihilate, check=False,
                                    match_tol=cfg.tol_match or tol)
    b = red.budget
    out.kv("kappa", b.kappa)
    out.kv("full size", b.full_size)
    out.kv("reduces", "yes" if b.reduces else "no")
    _print_reduction(out, red, ("sigma(A)", "latent roots of S", "roots of a (x s)",
                                "reconstructed sigma(M)", "direct sigma(M)"))
    if cfg.verbose:
        out.kv("S coefficients", json.dumps(red.lam_matrix.to_json()))
    return _verdict(out, red.passed)


def _forward_ratfunc(cfg: RunConfig, M: RingMatrix, out: Output) -> int:
    from .io import VAR
    from .ratfunc_iso import (RatFuncMatrix, format_grid, grid_points, iso_reduce, region_grid,
                              verify_improved_bounds)
    F = M.ring if isinstance(M.ring, RatFuncField) else None
    RM = RatFuncMatrix(M if F else M.convert(_ratfunc_of(M.ring)))
    a = parse_annihilator(cfg.extra["annihilator"])
    if isinstance(a, str):
        raise ParseError("annihilator 'auto' is not available for function-valued matrices")
    shift = cfg.extra.get("shift") or VAR
    f = _parse_shift(shift, RM.field)
    out.kv("annihilator", str(a))
    out.kv("shift", shift)
    red = iso_reduce(RM, cfg.split, a, f=f)
    out.kv("S", str(red.S.matrix).replace("\n", " "))
    out.kv("latent roots of M", red.M.latent_roots(cfg.tol_cluster))
    out.kv("latent roots of S", red.S.latent_roots(cfg.tol_cluster))
    out.block(red.report.to_text())
    grid = cfg.extra.get("grid") or 20
    pts = grid_points(0, cfg.extra.get("half_width") or 3.0, grid)
    bounds = verify_improved_bounds(red, pts, cfg.tol_cluster, raise_on_failure=False)
    out.block(bounds.to_text())
    if cfg.extra.get("grid_out"):
        Path(cfg.extra["grid_out"]).write_text(format_grid(region_grid(red.S, pts)) + "\n")
        out.kv("grid file", cfg.extra["grid_out"])
    return _verdict(out, red.report.passed and bounds.passed)


def _ratfunc_of(ring):
    from .exact_ring import ratfunc_field
    return ratfunc_field(ring.base, ring.var)


def _parse_shift(text: str, F: RatFuncField):
    from .io import parse_poly_string
    coeffs = parse_poly_string(text)
    return F.convert(F.poly(coeffs))


def cmd_reduce_converse(cfg: RunConfig, out: Output) -> int:
    M = read_matrix(cfg.inputs[0])
    keep = cfg.split
    if not M.is_square() or not 1 <= keep < M.rows:
        raise ParseError(f"--keep must satisfy 1 <= N < {M.rows} for a square matrix")
    out.kv("command", "reduce-converse")
    out.kv("matrix", f"{M.rows}x{M.cols} over {M.ring!r}")
    out.kv("keep", keep)
    X = _constant_matrix(M)
    m = _annihilator(cfg.extra["annihilator"], M, out)
    tol = cfg.tol_cluster
    red = spectrum_identity_converse(X, keep, m, tol=tol, tol_annihilate=cfg.tol_annihilate,
                                     check=False, match_tol=cfg.tol_match or tol)
    out.kv("reduced size", red.lam_matrix.degree * (M.rows - keep))
    _print_reduction(out, red, ("sigma(M)", "latent roots of K", "roots of m (x s)",
                                "reconstructed sigma(A)", "direct sigma(A)"))
    return _verdict(out, red.passed)


def _parse_add(spec: str, n: int):
    """``cone``, ``isolated:S``, ``random:S:SEED`` or a JSON file with B, C, D."""
    if spec == "cone":
        return np.ones((n, 1), int), None, None, 1
    parts = spec.split(":")
    try:
        if parts[0] == "isolated" and len(parts) == 2:
            s = int(parts[1])
            return np.zeros((n, s), int), None, np.zeros((s, s), int), s
        if parts[0] == "random" and len(parts) in (2, 3):
            s = int(parts[1])
            g = np.random.default_rng(int(parts[2]) if len(parts) == 3 else 0)
            B = g.integers(0, 2, (n, s))
            D = np.triu(g.integers(0, 2, (s, s)), 1)
            return B, None, D + D.T, s
    except ValueError as exc:
        raise ParseError(f"bad --add spec {spec!r}") from exc
    path = Path(spec)
    if not path.is_file():
        raise ParseError(f"--add must be cone, isolated:S, random:S[:SEED] or a JSON file, got {spec!r}")
    try:
        doc = json.loads(path.read_text())
        B = np.array(doc["B"], dtype=int)
        C = np.array(doc["C"], dtype=int) if "C" in doc else None
        D = np.array(doc["D"], dtype=int) if "D" in doc else None
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad attachment file {spec}: {exc}") from exc
    return B, C, D, B.shape[1]


def cmd_srg(cfg: RunConfig, out: Output) -> int:
    from .srg import SrgParams, add_vertices, remove_vertices, single_vertex_K_structure, validate_srg
    A, params = read_graph(cfg.inputs[0])
    if cfg.extra.get("params"):
        try:
            params = SrgParams(*[int(v) for v in cfg.extra["params"].split(",")])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad --params ({exc})") from exc
    if params is None:
        raise ParseError("graph file has no srg_params and no --params was given")
    out.kv("command", "srg")
    out.kv("params", params)
    val = validate_srg(A, params)
    out.kv("valid", "yes" if val else "no")
    if not val:
        out.block(val.report.to_text())
        return _verdict(out, False)
    tol = cfg.tol_cluster
    match = cfg.tol_match or 1e-8
    if cfg.extra.get("add"):
        B, C, D, s = _parse_add(cfg.extra["add"], params.n)
        run = add_vertices(A, params, B=B, C=C, D=D, s=s, deflate=cfg.extra.get("deflate", False),
                           tol=tol, match_tol=match, check=False)
        k_mult = run.reduction.latent.multiplicity(params.k, tol)
        run.extra["multiplicity of k among latent roots"] = k_mult
    else:
        try:
            verts = [int(v) for v in cfg.extra["remove"].split(",") if v.strip()]
        except ValueError as exc:
            raise ParseError("--remove takes comma-separated vertex indices") from exc
        run = remove_vertices(A, params, verts, tol=tol, match_tol=match, check=False)
    rep = run.report()
    ok = rep.passed
    out.block(rep.to_text())
    if cfg.extra.get("remove") and run.s == 1:
        struct = single_vertex_K_structure(A, params)
        out.kv("K vertex independent", "yes" if struct.passed else "no")
        ok = ok and struct.passed
    return _verdict(out, ok)


def cmd_verify(cfg: RunConfig, out: Output) -> int:
    from .suites import run_suite
    ex = cfg.extra
    res = run_suite(ex["suite"], ex["seed"], ex["count"], ring=ex["ring"], tol=cfg.tol_cluster,
                    match_tol=cfg.tol_match, tol_annihilate=cfg.tol_annihilate)
    out.block(res.to_text(cfg.verbose).rsplit("\nverdict:", 1)[0])
    return _verdict(out, res.passed)


def build_parser() -> argparse.ArgumentParser:
    from .suites import RINGS, SUITES
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here as well as stdout")
    common.add_argument("--tol-match", type=float, help="spectrum matching tolerance")
    common.add_argument("--tol-annihilate", type=float, default=ANNIHILATE_TOL,
                        help="relative annihilation residual (inexact rings)")
    common.add_argument("--tol-cluster", type=float, default=DEFAULT_TOL,
                        help="clustering and subtraction tolerance")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="schurlike", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("reduce-forward", parents=[common], help="reduce onto the trailing block")
    f.add_argument("--matrix", required=True)
    f.add_argument("--split", type=int, required=True, help="size of the leading block")
    f.add_argument("--annihilator", default="auto",
                   help="'auto', a file, ascending coefficients or a string like x^2-1")
    f.add_argument("--shift", help="shift f for function-valued matrices (default lam)")
    f.add_argument("--grid", type=int, help="grid points per side for region checks")
    f.add_argument("--grid-out", help="write (point, inG, inK) rows here")

    c = sub.add_parser("reduce-converse", parents=[common], help="recover a leading block spectrum")
    c.add_argument("--matrix", required=True)
    c.add_argument("--keep", type=int, required=True, help="size of the leading block kept")
    c.add_argument("--annihilator", default="auto")

    g = sub.add_parser("srg", parents=[common], help="strongly regular graph pipelines")
    g.add_argument("--graph", required=True)
    g.add_argument("--params", help="n,k,mu,alpha,t (overrides the file)")
    mode = g.add_mutually_exclusive_group(required=True)
    mode.add_argument("--add", help="cone | isolated:S | random:S[:SEED] | JSON file with B[, C, D]")
    mode.add_argument("--remove", help="comma-separated vertex indices")
    g.add_argument("--deflate", action="store_true", help="deflate the Perron pair first")

    v = sub.add_parser("verify", parents=[common], help="randomized identity suites")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=10)
    v.add_argument("--ring", choices=RINGS, default="int", help="ring for the exact suites")
    return p


COMMANDS = {
    "reduce-forward": cmd_reduce_forward,
    "reduce-converse": cmd_reduce_converse,
    "srg": cmd_srg,
    "verify": cmd_verify,
}


def _config(args) -> RunConfig:
    keys = {"reduce-forward": "split", "reduce-converse": "keep"}
    inputs = [getattr(args, k) for k in ("matrix", "graph") if getattr(args, k, None)]
    extra = {k: v for k, v in vars(args).items()
             if k in ("annihilator", "shift", "grid", "grid_out", "params", "add", "remove",
                      "deflate", "suite", "seed", "count", "ring")}
    if args.command == "verify" and args.count < 0:
        raise ParseError("--count must be non-negative")
    cfg = RunConfig(args.command, inputs, getattr(args, keys.get(args.command, ""), None),
                    args.tol_match, args.tol_annihilate, args.tol_cluster, args.out,
                    args.verbose, extra)
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output()
    try:
        cfg = _config(args)
        code = COMMANDS[args.command](cfg, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchurLikeError as exc:
        out.kv("error", f"{type(exc).__name__}: {exc}")
        code = _verdict(out, False)
    text = out.text()
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
