"""Batch command-line interface: compute, compare, perm, selftest.

One job per invocation.  Serialization is deterministic: polynomial terms
are sorted graded-lex (grade = beta-degree + x-degree, ties by descending
(beta, x1, ..., xN) exponents), JSON is emitted with sorted keys, and in
--deterministic mode timing fields are omitted so identical jobs produce
identical bytes.

Exit status: 0 success, 1 usage error, 2 internal invariant violation,
3 comparison mismatch under `compare --strict`.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .algebra import Poly
from .errors import InternalError, UsageError
from .genfun import GVariant, jt_determinant
from .groth import MethodReport, compare, flagged_groth_fermionic
from .selftest import run_selftest
from .shapes import SkewFlagged, check_permutation, inversion_sets, \
    is_vexillary, shape_and_flag
from .tableaux import tableaux_polynomial

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2
EXIT_MISMATCH = 3

_VARIANTS = {
    "double-bracket": GVariant.DOUBLE_BRACKET,
    "matsumura": GVariant.MATSUMURA,
}


@dataclass
class JobSpec:
    command: str
    lam: tuple = ()
    mu: tuple | None = None
    f: tuple = ()
    g: tuple | None = None
    n_vars: int | None = None
    beta_cap: int | None = None
    x_cap: int | None = None
    method: str = "jt"
    variant: str = "double-bracket"
    fmt: str = "text"
    w: tuple = ()
    strict: bool = False
    deterministic: bool = False
    threads: int = 1


# ---------------------------------------------------------------------------
# serialization

def poly_to_json_dict(poly: Poly) -> dict:
    poly.require_integer_coefficients()
    ring = poly.ring
    return {
        "n_vars": ring.n_vars,
        "beta_cap": ring.beta_cap,
        "x_cap": ring.x_cap,
        "terms": [
            {"coeff": coeff, "beta": bdeg, "x": list(xdegs)}
            for (bdeg, xdegs), coeff in poly.sorted_terms()
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def instance_to_json_dict(inst: SkewFlagged) -> dict:
    return {
        "lambda": list(inst.lam),
        "mu": list(inst.mu),
        "f": list(inst.f),
        "g": list(inst.g),
        "n_vars": inst.n_vars,
        "beta_cap": inst.beta_cap,
        "x_cap": inst.x_cap,
    }


def report_to_json_dict(report: MethodReport, deterministic: bool) -> dict:
    out = {
        "instance": instance_to_json_dict(report.instance),
        "results": {name: poly_to_json_dict(p)
                    for name, p in report.results.items()},
        "agreements": dict(sorted(report.agreements.items())),
        "all_agree": report.all_agree(),
        "stabilization": dict(sorted(report.stabilization.items())),
        "stable": report.stable(),
    }
    if not deterministic:
        out["timings_ms"] = {k: round(v, 3)
                             for k, v in report.timings_ms.items()}
    return out


# ---------------------------------------------------------------------------
# argument handling

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _add_instance_args(sub):
    sub.add_argument("--lambda", dest="lam", default="",
                     help="outer partition, e.g. 2,1")
    sub.add_argument("--mu", default="", help="inner partition (default empty)")
    sub.add_argument("--f", default="", help="upper flags, one per row")
    sub.add_argument("--g", default="",
                     help="lower flags, one per row (default all 1)")
    sub.add_argument("--nvars", type=int, default=None,
                     help="number of x variables (default: smallest legal)")
    sub.add_argument("--beta-cap", type=int, default=None,
                     help="beta truncation cap (default: tableau bound)")
    sub.add_argument("--x-cap", type=int, default=None,
                     help="x-degree truncation cap (default: |shape| + beta cap)")
    sub.add_argument("--format", dest="fmt", choices=("text", "json"),
                     default="text")


def build_parser() -> _Parser:
    parser = _Parser(prog="flaggroth",
                     description="flagged skew Grothendieck polynomials: "
                                 "determinant, Fock-space and tableau "
                                 "evaluations with exact cross-checks")
    subs = parser.add_subparsers(dest="command", required=True)

    comp = subs.add_parser("compute", help="compute one polynomial")
    _add_instance_args(comp)
    comp.add_argument("--method", choices=("jt", "fermionic", "tableau"),
                      default="jt")
    comp.add_argument("--variant", choices=tuple(_VARIANTS), default="double-bracket")

    cmp_ = subs.add_parser("compare", help="run all applicable methods and "
                                           "report agreement")
    _add_instance_args(cmp_)
    cmp_.add_argument("--strict", action="store_true",
                      help="exit 3 when any two methods disagree")
    cmp_.add_argument("--deterministic", action="store_true",
                      help="omit timing fields from the output")
    cmp_.add_argument("--threads", type=int, default=1,
                      help="degree of parallelism for method evaluation")

    perm = subs.add_parser("perm", help="inversion sets / vexillary analysis")
    perm.add_argument("--w", required=True,
                      help="one-line notation, digits (1432) or commas")
    perm.add_argument("--format", dest="fmt", choices=("text", "json"),
                      default="text")

    subs.add_parser("selftest", help="run the desk-scale property suites")
    return parser


def job_from_args(args) -> JobSpec:
    job = JobSpec(command=args.command)
    if args.command in ("compute", "compare"):
        job.lam = _int_list(args.lam)
        job.mu = _int_list(args.mu) or None
        job.f = _int_list(args.f)
        job.g = _int_list(args.g) or None
        job.n_vars = args.nvars
        job.beta_cap = args.beta_cap
        job.x_cap = args.x_cap
        job.fmt = args.fmt
    if args.command == "compute":
        job.method = args.method
        job.variant = args.variant
    if args.command == "compare":
        job.strict = args.strict
        job.deterministic = args.deterministic
        job.threads = args.threads
    if args.command == "perm":
        w = args.w.strip()
        job.w = _int_list(w) if "," in w else tuple(int(ch) for ch in w)
        job.fmt = args.fmt
    return job


def build_instance(job: JobSpec) -> SkewFlagged:
    return SkewFlagged.make(job.lam, mu=job.mu, f=job.f, g=job.g,
                            n_vars=job.n_vars, beta_cap=job.beta_cap,
                            x_cap=job.x_cap)


# ---------------------------------------------------------------------------
# commands

def _run_compute(job: JobSpec):
    inst = build_instance(job)
    if job.method == "jt":
        poly = jt_determinant(inst, _VARIANTS[job.variant])
    elif job.method == "fermionic":
        poly = flagged_groth_fermionic(inst)
    else:
        poly = tableaux_polynomial(inst)
    if job.fmt == "json":
        return EXIT_OK, dumps(poly_to_json_dict(poly))
    return EXIT_OK, poly.to_text() + "\n"


def _run_compare(job: JobSpec):
    inst = build_instance(job)
    report = compare(inst, threads=job.threads)
    status = EXIT_OK
    if job.strict and not report.all_agree():
        status = EXIT_MISMATCH
    if job.fmt == "json":
        return status, dumps(report_to_json_dict(report, job.deterministic))
    lines = [f"instance: lambda={','.join(map(str, inst.lam)) or '-'}"
             f" mu={','.join(map(str, inst.mu)) or '-'}"
             f" f={','.join(map(str, inst.f)) or '-'}"
             f" g={','.join(map(str, inst.g)) or '-'}"
             f" nvars={inst.n_vars}"
             f" beta_cap={inst.beta_cap} x_cap={inst.x_cap}"]
    for name in sorted(report.results):
        lines.append(f"{name}: {report.results[name].to_text()}")
    for pair in sorted(report.agreements):
        lines.append(f"agree {pair}: {str(report.agreements[pair]).lower()}")
    for name in sorted(report.stabilization):
        lines.append(f"stable {name}: "
                     f"{str(report.stabilization[name]).lower()}")
    if not job.deterministic:
        for name in sorted(report.timings_ms):
            lines.append(f"time_ms {name}: {report.timings_ms[name]:.3f}")
    lines.append(f"all methods agree: {str(report.all_agree()).lower()}")
    return status, "\n".join(lines) + "\n"


def _run_perm(job: JobSpec):
    w = check_permutation(job.w)
    sets = inversion_sets(w)
    vex = is_vexillary(w)
    lam, flag = shape_and_flag(w) if vex else (None, None)
    if job.fmt == "json":
        return EXIT_OK, dumps({
            "w": list(w),
            "inversion_sets": [sorted(s) for s in sets],
            "vexillary": vex,
            "lambda": list(lam) if lam is not None else None,
            "flag": list(flag) if flag is not None else None,
        })
    lines = [f"w: {' '.join(map(str, w))}"]
    shown = ", ".join(
        f"I{i}={{{','.join(map(str, sorted(s)))}}}"
        for i, s in enumerate(sets, start=1))
    lines.append(f"inversion_sets: {shown}")
    lines.append(f"vexillary: {str(vex).lower()}")
    if vex:
        lines.append(f"lambda: {','.join(map(str, lam)) or '-'}")
        lines.append(f"flag: {','.join(map(str, flag)) or '-'}")
    return EXIT_OK, "\n".join(lines) + "\n"


def run(job: JobSpec):
    """Execute one job; returns (exit_status, output_text)."""
    if job.command == "compute":
        return _run_compute(job)
    if job.command == "compare":
        return _run_compare(job)
    if job.command == "perm":
        return _run_perm(job)
    if job.command == "selftest":
        lines = []
        ok = run_selftest(emit=lines.append)
        return (EXIT_OK if ok else EXIT_INTERNAL), "\n".join(lines) + "\n"
    raise UsageError(f"unknown command {job.command!r}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        job = job_from_args(args)
        status, text = run(job)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
