"""Command-line front end.

Exit status is 0 on success (balanced, reasonable), 1 for a negative verdict
and 2 for unreadable input or a numerical failure.

    dualherm eig matrix.txt
    dualherm --json balance graph.txt
    dualherm gen --n 50 --ring q --seed 3 --out cycle.txt
    dualherm bench --sizes 10,50,200 --ring c
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from functools import reduce
from pathlib import Path

import numpy as np

from .errors import ClusterPairingError, DualAlgebraError
from .gaingraph import (
    BALANCE_THRESHOLD,
    Formation,
    adjacency_laplacian,
    check_balance,
    cycle_residue,
    cycle_spectrum_closed_form,
    gen_balanced_cycle,
    verify_reasonable,
)
from .ground import Ring
from .ring import DualNumber
from .smm import CLUSTER_TOL, smm_eig
from .textio import (FormatError, format_graph, format_scalar, parse_graph, parse_matrix,
                     parse_scheme)

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2
BENCH_RESIDUE_BOUND = 1e-10
# table output keeps the same 15 significant digits the JSON report guarantees
FLOAT_FORMAT = ".15g"


@dataclass
class RunReport:
    """Everything a run produced; serialised as JSON with ``--json``.

    Floats go through :func:`json.dumps`, which writes the shortest repr that
    round-trips exactly.
    """

    command: list[str]
    input_digest: str | None
    results: dict = field(default_factory=dict)
    residuals: list[float] = field(default_factory=list)
    wall_time: float = 0.0
    exit_code: int = EXIT_OK

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def _native_entries(arr: np.ndarray, ring: Ring) -> list:
    """``(n, 4)`` rows as lists of ``ring.ncomp`` floats."""
    return np.asarray(arr)[..., :ring.ncomp].tolist()


def _read(path: str) -> tuple[str, str]:
    data = Path(path).read_bytes()
    return data.decode("utf-8"), hashlib.sha256(data).hexdigest()


def _cmd_eig(args, report: RunReport) -> list[str]:
    text, report.input_digest = _read(args.file)
    A = parse_matrix(text)
    dec = smm_eig(A, tol=args.tol)
    report.results = {
        "ring": A.ring.value,
        "n": A.shape[0],
        "eigenvalues": [[p.value.standard, p.value.dual] for p in dec],
        "eigenvectors": [{"standard": _native_entries(p.vector.standard, A.ring),
                          "dual": _native_entries(p.vector.dual, A.ring)} for p in dec],
    }
    report.residuals = dec.residuals.tolist()
    lines = [f"{'#':>3}  {'eigenvalue':<44} residual"]
    lines += [f"{k + 1:>3}  {format(p.value, FLOAT_FORMAT):<44} {p.residual:{FLOAT_FORMAT}}"
              for k, p in enumerate(dec)]
    return lines


def _cmd_det(args, report: RunReport) -> list[str]:
    text, report.input_digest = _read(args.file)
    A = parse_matrix(text)
    dec = smm_eig(A, tol=args.tol)
    det = reduce(lambda a, b: a * b, dec.values, DualNumber(1.0))
    report.results = {"det": [det.standard, det.dual]}
    report.residuals = dec.residuals.tolist()
    return [f"det = {det:{FLOAT_FORMAT}}"]


def _cmd_balance(args, report: RunReport) -> list[str]:
    text, report.input_digest = _read(args.file)
    g = parse_graph(text)
    r = check_balance(g, args.threshold, tol=args.tol)
    report.results = r.to_dict()
    if r.switching is not None:
        report.results["switching"] = {"standard": _native_entries(r.switching.standard, g.ring),
                                       "dual": _native_entries(r.switching.dual, g.ring)}
    report.residuals = [r.err]
    report.exit_code = EXIT_OK if r.balanced else EXIT_NEGATIVE
    return [
        f"balanced: {'yes' if r.balanced else 'no'}",
        f"components: {r.component_count}, zero eigenvalues: {r.zero_eigenvalue_count}",
        f"condition (i): {r.condition1_ok}, condition (ii): {r.condition2_ok}",
        f"Err = {r.err:{FLOAT_FORMAT}} (threshold {r.threshold:g})",
        "Laplacian spectrum: " + ", ".join(f"{v:{FLOAT_FORMAT}}" for v in r.spectrum),
    ]


def _cmd_verify(args, report: RunReport) -> list[str]:
    text, report.input_digest = _read(args.file)
    scheme = parse_scheme(text)
    out = verify_reasonable(scheme, args.threshold)
    if isinstance(out, Formation):
        report.results = {
            "reasonable": True,
            "formation": [{"standard": _native_entries(q.standard.as_array(), scheme.ring),
                           "dual": _native_entries(q.dual.as_array(), scheme.ring)} for q in out],
        }
        return ["reasonable: yes"] + [f"  q_{k + 1} = {format_scalar(q)}" for k, q in enumerate(out)]
    i, j = out.edge
    report.results = {"reasonable": False, "edge": [i + 1, j + 1],
                      "mismatch": out.mismatch, "kind": out.kind}
    report.residuals = [out.mismatch]
    report.exit_code = EXIT_NEGATIVE
    return [f"reasonable: no ({out.kind} condition fails on edge {i + 1}-{j + 1}, "
            f"mismatch {out.mismatch:{FLOAT_FORMAT}})"]


def _cmd_cycle(args, report: RunReport) -> list[str]:
    spec = cycle_spectrum_closed_form(args.n, args.theta)
    report.results = {"n": args.n, "theta": args.theta, "spectrum": spec.tolist()}
    return [f"{v:{FLOAT_FORMAT}}" for v in spec]


def _cmd_gen(args, report: RunReport) -> list[str]:
    g = gen_balanced_cycle(args.n, args.ring, seed=args.seed)
    text = format_graph(g)
    report.results = {"n": args.n, "ring": g.ring.value, "seed": args.seed}
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        report.results["out"] = args.out
        return [f"wrote {args.out}"]
    report.results["graph"] = text
    return [text.rstrip("\n")]


def _cmd_bench(args, report: RunReport) -> list[str]:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise FormatError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    rows = []
    for n in sizes:
        g = gen_balanced_cycle(n, args.ring, seed=args.seed)
        t0 = time.perf_counter()
        _, L = adjacency_laplacian(g)
        dec = smm_eig(L, tol=args.tol)
        t_eig = time.perf_counter() - t0
        res = cycle_residue(dec, n)
        bal = check_balance(g, args.threshold, tol=args.tol)
        rows.append({"n": n, "time": t_eig, "residue": res, "err": bal.err, "balanced": bal.balanced})
    report.results = {"ring": Ring.parse(args.ring).value, "seed": args.seed, "rows": rows}
    report.residuals = [r["residue"] for r in rows]
    if not all(r["balanced"] and r["residue"] <= BENCH_RESIDUE_BOUND for r in rows):
        report.exit_code = EXIT_NEGATIVE
    lines = [f"{'n':>6} {'time (s)':>22} {'residue':>22} {'Err':>22} balanced"]
    lines += [f"{r['n']:>6} {r['time']:>22{FLOAT_FORMAT}} {r['residue']:>22{FLOAT_FORMAT}} "
              f"{r['err']:>22{FLOAT_FORMAT}} {r['balanced']}" for r in rows]
    return lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help=f"eigenvalue clustering tolerance (default {CLUSTER_TOL:g})")
    common.add_argument("--threshold", type=float, default=argparse.SUPPRESS,
                        help=f"balance / reasonableness threshold (default {BALANCE_THRESHOLD:g})")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="write a JSON report instead of a table")

    parser = argparse.ArgumentParser(
        prog="dualherm", parents=[common],
        description="Dual Hermitian eigenvalues, gain graph balance and formation feasibility.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in [("eig", "all dual eigenpairs of a matrix file"),
                           ("det", "dual determinant of a matrix file"),
                           ("balance", "balance test of a gain graph file"),
                           ("verify", "reasonableness of a relative configuration scheme file")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")

    p = sub.add_parser("cycle", parents=[common], help="closed-form cycle Laplacian spectrum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=float, default=0.0)

    p = sub.add_parser("gen", parents=[common], help="random balanced cycle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ring", choices=["r", "c", "q"], default="q")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("bench", parents=[common], help="timing and residue on balanced cycles")
    p.add_argument("--sizes", default="10,20,50,100,200")
    p.add_argument("--ring", choices=["c", "q"], default="c")
    p.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {
    "eig": _cmd_eig,
    "det": _cmd_det,
    "balance": _cmd_balance,
    "verify": _cmd_verify,
    "cycle": _cmd_cycle,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> tuple[int, RunReport | None]:
    """Parse ``argv``, run the command and print its output; returns ``(exit code, report)``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.tol = getattr(args, "tol", CLUSTER_TOL)
    args.threshold = getattr(args, "threshold", BALANCE_THRESHOLD)
    args.json = getattr(args, "json", False)

    report = RunReport(command=argv, input_digest=None)
    t0 = time.perf_counter()
    try:
        lines = COMMANDS[args.command](args, report)
    except (FormatError, DualAlgebraError, ClusterPairingError, OSError, UnicodeDecodeError,
            np.linalg.LinAlgError, ValueError) as exc:
        report.exit_code = EXIT_ERROR
        report.results = {"error": f"{type(exc).__name__}: {exc}"}
        report.wall_time = time.perf_counter() - t0
        if args.json:
            print(report.to_json(), file=stdout)
        print(f"dualherm {args.command}: {exc}", file=stderr)
        return EXIT_ERROR, report
    report.wall_time = time.perf_counter() - t0
    if args.json:
        print(report.to_json(), file=stdout)
    else:
        print("\n".join(lines), file=stdout)
    return report.exit_code, report


def main(argv: list[str] | None = None) -> int:
    try:
        code, _ = run(argv)
    except SystemExit as exc:  # argparse: --help exits 0, usage errors 2
        return EXIT_OK if not exc.code else EXIT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
