"""Command-line front end: ``coherence-nogo {analyze,bloch-map,verify,random-state}``.

Exit codes: 0 success, 1 a verified property failed, 2 bad input,
3 a numerical solver did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import checks
from .enhancement import enhancement_check
from .errors import CoherenceError, IncoherentInput, InvalidState, NotConverged, ZeroPopulation
from .measures import c_l1
from .purification import purifiability_check
from .qubit import bloch_region_grid
from .states import as_density_matrix, random_density_matrix

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
CSV_HEADER = ["r", "theta", "phi", "c_l1", "ceiling", "enhanceable", "purifiable_possible"]
REPORT_KEYS = (
    "input",
    "c_l1",
    "gamma",
    "lambda_max",
    "ceiling",
    "enhanceable",
    "condition_residual",
    "purifiable_possible",
    "full_rank",
    "lambda_min",
    "witnesses",
)


class InputError(Exception):
    pass


def fmt(x: float) -> str:
    """12 significant digits."""
    return format(float(x), ".12g")


def num(x: float) -> float:
    return float(fmt(x))


def _matrix_block(a) -> dict:
    a = np.asarray(a, dtype=complex)
    return {"re": [[num(v) for v in row] for row in a.real], "im": [[num(v) for v in row] for row in a.imag]}


# state files ------------------------------------------------------------


def state_to_dict(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {"dim": int(rho.shape[0]), "re": rho.real.tolist(), "im": rho.imag.tolist()}


def write_state(rho, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(rho)) + "\n")


def parse_state(obj) -> np.ndarray:
    if not isinstance(obj, dict) or not {"dim", "re", "im"} <= obj.keys():
        raise InputError('state file must be a JSON object with keys "dim", "re", "im"')
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError(f"dim must be a positive integer, got {dim!r}")
    try:
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"re/im must be numeric arrays: {exc}") from exc
    for name, part in (("re", re), ("im", im)):
        if part.shape != (dim, dim):
            raise InputError(f"{name} has shape {part.shape}, expected {(dim, dim)}")
    rho = re + 1j * im
    if not np.all(np.isfinite(rho)):
        raise InputError("state contains NaN or Inf")
    return rho


def read_state(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return parse_state(obj)


# analyze ----------------------------------------------------------------


def analyze(rho, tol: float = 1e-9) -> dict:
    """Full report for a validated state, keyed by ``REPORT_KEYS``."""
    echo = state_to_dict(rho)
    rho = as_density_matrix(rho)
    purify = purifiability_check(rho)
    coherence = c_l1(rho)
    try:
        t2 = enhancement_check(rho, tol)
    except IncoherentInput:
        t2 = None

    if t2 is None:
        # M reduces to the support indicator: nothing to enhance
        lam_max, ceiling, enhanceable, residual, kraus = 1.0, 0.0, False, None, None
    else:
        lam_max, ceiling, enhanceable = t2.lambda_max, t2.ceiling, t2.enhanceable
        residual = num(t2.condition_residual)
        kraus = None
        if t2.witness is not None:
            kraus = [_matrix_block(k) for k in t2.witness.kraus]

    decomposition = None
    if purify.witness is not None:
        w = purify.witness
        decomposition = {
            "weight": num(w.weight),
            "sigma": _matrix_block(w.sigma),
            "tau": _matrix_block(w.tau),
            "degenerate": w.degenerate,
        }

    return {
        "input": echo,
        "c_l1": num(coherence),
        "gamma": num(purify.gamma),
        "lambda_max": num(lam_max),
        "ceiling": num(ceiling),
        "enhanceable": enhanceable,
        "condition_residual": residual,
        "purifiable_possible": purify.purifiable_possible,
        "full_rank": purify.full_rank,
        "lambda_min": num(purify.lambda_min),
        "witnesses": {"kraus": kraus, "decomposition": decomposition},
    }


def _text_value(v) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def format_text(report: dict) -> str:
    lines = [f"dim                  {report['input']['dim']}"]
    for key in REPORT_KEYS[1:-1]:
        lines.append(f"{key:<20} {_text_value(report[key])}")
    kraus = report["witnesses"]["kraus"]
    if kraus:
        diag = [fmt(kraus[0]["re"][i][i]) for i in range(len(kraus[0]["re"]))]
        lines.append(f"{'optimal filter':<20} diag({', '.join(diag)})")
    dec = report["witnesses"]["decomposition"]
    if dec:
        lines.append(f"{'incoherent weight':<20} {fmt(dec['weight'])}" + (" (degenerate)" if dec["degenerate"] else ""))
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    rho = read_state(args.path)
    report = analyze(rho, args.tol)
    if args.text:
        print(format_text(report))
    else:
        print(json.dumps(report, indent=2))
    return EXIT_OK


# bloch-map --------------------------------------------------------------


def bloch_csv(n_r: int, n_theta: int, n_phi: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for cell in bloch_region_grid(n_r, n_theta, n_phi):
        b = cell.bloch
        writer.writerow(
            [
                fmt(b.r),
                fmt(b.theta),
                fmt(b.phi),
                fmt(cell.c_l1),
                fmt(cell.ceiling),
                str(cell.enhanceable).lower(),
                str(cell.purifiable_possible).lower(),
            ]
        )
    return buf.getvalue()


def cmd_bloch_map(args) -> int:
    if min(args.nr, args.ntheta, args.nphi) < 2:
        raise InputError("grid counts must all be at least 2")
    text = bloch_csv(args.nr, args.ntheta, args.nphi)
    if args.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc
    print(f"wrote {text.count(chr(10)) - 1} cells to {args.out}")
    return EXIT_OK


# verify -----------------------------------------------------------------


def cmd_verify(args, ceiling=None) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    try:
        dims = tuple(int(x) for x in args.dims.split(","))
    except ValueError as exc:
        raise InputError(f"--dims must be comma-separated integers, got {args.dims!r}") from exc
    if not dims or min(dims) < 2:
        raise InputError("--dims entries must be at least 2")
    extra = {} if ceiling is None else {"ceiling": ceiling}
    results = checks.run_verify(args.seed, args.trials, dims, **extra)
    failed = False
    out_dir = Path(args.falsifier_dir)
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'}  {res.name}: {res.detail}")
        if not res.passed:
            failed = True
            if res.falsifier is not None:
                out_dir.mkdir(parents=True, exist_ok=True)
                path = out_dir / f"falsifier_{res.name.replace(' ', '_')}_seed{args.seed}.json"
                write_state(res.falsifier, path)
                print(f"      falsifying state written to {path}")
    return EXIT_PROPERTY if failed else EXIT_OK


# random-state -----------------------------------------------------------


def cmd_random_state(args) -> int:
    if args.dim < 1:
        raise InputError("--dim must be positive")
    rank = args.dim if args.rank is None else args.rank
    if not 1 <= rank <= args.dim:
        raise InputError(f"--rank must lie in [1, {args.dim}], got {rank}")
    rho = random_density_matrix(args.dim, rank=rank, seed=args.seed)
    text = json.dumps(state_to_dict(rho)) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherence-nogo",
        description="Purification and enhancement limits for quantum coherence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report coherence, enhancement and purification verdicts for a state file")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=1e-9, help="residual threshold for the enhancement verdict")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="text", action="store_false", help="JSON output (default)")
    mode.add_argument("--text", dest="text", action="store_true", help="human-readable output")
    p.set_defaults(func=cmd_analyze, text=False)

    p = sub.add_parser("bloch-map", help="classify a grid of qubit states and write CSV")
    p.add_argument("--nr", type=int, default=20)
    p.add_argument("--ntheta", type=int, default=40)
    p.add_argument("--nphi", type=int, default=8)
    p.add_argument("--out", default="bloch_map.csv", help="output path, or - for stdout")
    p.set_defaults(func=cmd_bloch_map)

    p = sub.add_parser("verify", help="run randomized property checks against the oracles")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--dims", default="2,3,4")
    p.add_argument("--falsifier-dir", default=".", help="where failing states are written")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random-state", help="write a random density matrix as a state file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rank", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default="-", help="output path, or - for stdout")
    p.set_defaults(func=cmd_random_state)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotConverged as exc:
        print(f"error: solver did not converge: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, InvalidState, ZeroPopulation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CoherenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
