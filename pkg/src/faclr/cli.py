"""Command-line entry point: ``faclr <verb> [options]``.

Exit codes: 0 on success, 1 when a verification fails, 2 on a usage error.
Data goes to stdout (or ``--output``); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb
from typing import Optional, TextIO

from .errors import FaclrError
from .facschur import (
    SHIFTED, SYMBOLIC_A, SYMBOLIC_B, ZERO_SEQ, SeqSpec, fac_schur, schur, tableau_sum,
)
from .lrcoef import (
    ENGINES, c_hh, c_recurrence, c_tableau, classical_lr, f_hook, f_recurrence, f_tableau,
)
from .oracle import product_expand
from .ring import A, B, MultiPoly, Specialization
from .shapes import (
    SkewShape, contains, dim_skew, format_partition, parse_partition, partitions_in_box,
)
from .suites import SUITES, SuiteConfig, run_suite

SCHEMA = 1
SEED_ENV = "FACLR_SEED"
ENUMERATION_LIMIT = 10 ** 7
DESK_BOX_CELLS = 16
ALL_ENGINES = ENGINES + ("enumerate",)


class UsageError(Exception):
    pass


# -- argument parsing -----------------------------------------------------------

def _partition_arg(text: str):
    try:
        return parse_partition(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _skew_arg(text: str) -> SkewShape:
    try:
        return SkewShape.parse(text)
    except (ValueError, FaclrError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _box_arg(text: str) -> tuple:
    try:
        rows, cols = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"box must look like 3x3, got {text!r}") from None
    if rows < 0 or cols < 0:
        raise argparse.ArgumentTypeError("box sides must be non-negative")
    return rows, cols


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _seq_arg(family: str):
    def parse(text: str) -> SeqSpec:
        if text == "symbolic":
            return SeqSpec.symbolic(family)
        if text == "shifted":
            return SHIFTED
        if text == "zero":
            return ZERO_SEQ
        try:
            values = [Fraction(v) for v in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"expected symbolic, shifted, zero or a comma list of rationals, got {text!r}") from None
        return SeqSpec.explicit({i: v for i, v in enumerate(values, 1)}, family)
    return parse


def _default_seed() -> int:
    try:
        return int(os.environ.get(SEED_ENV, "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="faclr", description="Factorial Schur polynomials and their LR coefficients.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def output_flags(sp, formats=("text", "json", "csv")):
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--output", help="write data here instead of stdout")

    def seq_flags(sp):
        sp.add_argument("--a", type=_seq_arg(A), default=SYMBOLIC_A,
                        help="symbolic | shifted | zero | comma list a1,a2,...")
        sp.add_argument("--b", type=_seq_arg(B), default=SYMBOLIC_B,
                        help="symbolic | shifted | zero | comma list b1,b2,...")

    sp = sub.add_parser("schur", help="classical Schur polynomial")
    sp.add_argument("--lam", type=_partition_arg, required=True)
    sp.add_argument("--n", type=_positive, required=True)
    output_flags(sp)

    sp = sub.add_parser("facschur", help="factorial Schur polynomial s_lam(x|a)")
    sp.add_argument("--lam", type=_partition_arg, required=True)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--a", type=_seq_arg(A), default=SYMBOLIC_A)
    sp.add_argument("--method", choices=("tableau", "det"), default="tableau")
    output_flags(sp)

    sp = sub.add_parser("lrcoef", help="one coefficient c^nu_{theta,mu}(a,b)")
    sp.add_argument("--theta", type=_skew_arg, required=True)
    sp.add_argument("--mu", type=_partition_arg, required=True)
    sp.add_argument("--nu", type=_partition_arg, required=True)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--engine", choices=ALL_ENGINES, default="tableau")
    sp.add_argument("--force", action="store_true", help="allow enumerations above the size limit")
    seq_flags(sp)
    output_flags(sp)

    sp = sub.add_parser("table", help="all coefficients for partitions in a box")
    sp.add_argument("--box", type=_box_arg, default=(2, 2))
    sp.add_argument("--n", type=_positive, required=True)
    kind = sp.add_mutually_exclusive_group()
    kind.add_argument("--fs", action="store_true", help="shifted coefficients f with an agreement column")
    kind.add_argument("--engine", choices=("tableau", "enumerate", "recurrence", "oracle"))
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--force", action="store_true")
    seq_flags(sp)
    output_flags(sp)

    sp = sub.add_parser("verify", help="run identity suites")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--box", type=_box_arg, default=(3, 3))
    sp.add_argument("--n", type=_positive, default=3)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--points", type=_positive, default=5)
    sp.add_argument("--max-size", type=int, default=4, help="largest |lam| for dual and g-expansion")
    sp.add_argument("--jobs", type=_positive, default=1)
    output_flags(sp, ("text", "json"))

    sp = sub.add_parser("bench", help="time engines on a seeded workload")
    sp.add_argument("--box", type=_box_arg, default=(3, 3))
    sp.add_argument("--n", type=_positive, default=3)
    sp.add_argument("--engine", choices=ALL_ENGINES, action="append",
                    help="repeat to compare engines (default: tableau and recurrence)")
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--points", type=_positive, default=20)
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--force", action="store_true")
    seq_flags(sp)
    output_flags(sp)

    sub.add_parser("selftest", help="run the acceptance criteria")
    return p


# -- engines --------------------------------------------------------------------

def _is_shifted(seq: SeqSpec) -> bool:
    return seq.kind == "shifted"


def predicted_enumeration(theta: SkewShape, mu, nu, n: int) -> int:
    """Upper estimate of the number of barred tableaux: fillings x bar positions x chains."""
    if not contains(mu, nu):
        return 0
    steps = sum(nu) - sum(mu)
    if steps > theta.size:
        return 0
    fillings = int(tableau_sum(theta, [1] * n, ZERO_SEQ).constant())
    return fillings * comb(theta.size, steps) * dim_skew(SkewShape(tuple(nu), tuple(mu)))


def _guard(engine: str, theta, mu, nu, n: int, force: bool, err: TextIO) -> None:
    if engine != "enumerate":
        return
    size = predicted_enumeration(theta, mu, nu, n)
    if size > ENUMERATION_LIMIT:
        msg = f"predicted enumeration of {size} barred tableaux exceeds {ENUMERATION_LIMIT}"
        if not force:
            raise UsageError(msg + "; pass --force to run anyway")
        print("warning: " + msg, file=err)


def compute(engine: str, theta: SkewShape, mu, nu, n: int, aseq: SeqSpec, bseq: SeqSpec) -> MultiPoly:
    """c^nu_{theta,mu}(a,b) by the named engine."""
    if engine == "tableau":
        return c_tableau(theta, mu, nu, n, aseq, bseq).value
    if engine == "enumerate":
        return c_tableau(theta, mu, nu, n, aseq, bseq, method="enumerate").value
    if engine == "recurrence":
        return c_recurrence(theta, mu, nu, n, aseq, bseq).value
    if engine == "oracle":
        return product_expand(theta, mu, n, aseq, bseq).get(nu)
    if engine == "hh":
        if not aseq.numeric:
            raise UsageError("engine hh needs a numeric a-sequence")
        spec = Specialization(a_rule=aseq.as_rule(), b_rule=bseq.as_rule())
        v = c_hh(theta, mu, nu, n, spec)
        return v if isinstance(v, MultiPoly) else MultiPoly.const(v)
    if theta.inner:
        raise UsageError(f"engine {engine} needs a normal shape theta")
    if engine == "hook":
        if not (_is_shifted(aseq) and _is_shifted(bseq)):
            raise UsageError("engine hook needs --a shifted --b shifted")
        return MultiPoly.const(f_hook(theta.outer, mu, nu))
    if engine == "classical":
        return MultiPoly.const(classical_lr(theta.outer, mu, nu))
    raise UsageError(f"unknown engine {engine}")


# -- output helpers -------------------------------------------------------------

def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _poly_output(fmt: str, label: dict, poly: MultiPoly) -> str:
    if fmt == "json":
        return _dump_json({"schema": SCHEMA, **label, "text": poly.to_text(), "value": poly.to_json_obj()})
    if fmt == "csv":
        return _csv_text(list(label) + ["value"], [list(label.values()) + [poly.to_text()]])
    return poly.to_text() + "\n"


def _map(fn, items, jobs: int) -> list:
    """Apply fn to items, in input order, optionally across processes."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _warn_box(box, err: TextIO) -> None:
    if box[0] * box[1] > DESK_BOX_CELLS:
        print(f"warning: a {box[0]}x{box[1]} box is above desk scale; expect long runs", file=err)


# -- verbs ----------------------------------------------------------------------

def cmd_schur(args, err) -> tuple[int, str]:
    poly = schur(args.lam, args.n)
    return 0, _poly_output(args.format, {"lam": format_partition(args.lam), "n": args.n}, poly)


def cmd_facschur(args, err) -> tuple[int, str]:
    poly = fac_schur(args.lam, args.n, args.a, args.method)
    label = {"lam": format_partition(args.lam), "n": args.n, "a": str(args.a)}
    return 0, _poly_output(args.format, label, poly)


def cmd_lrcoef(args, err) -> tuple[int, str]:
    _guard(args.engine, args.theta, args.mu, args.nu, args.n, args.force, err)
    poly = compute(args.engine, args.theta, args.mu, args.nu, args.n, args.a, args.b)
    label = {"theta": str(args.theta), "mu": format_partition(args.mu), "nu": format_partition(args.nu),
             "n": args.n, "engine": args.engine, "a": str(args.a), "b": str(args.b)}
    return 0, _poly_output(args.format, label, poly)


def _fs_rows(job) -> list:
    lam, box, n = job
    shapes = [p for p in partitions_in_box(*box) if len(p) <= n]
    rows = []
    for mu in shapes:
        expansion = product_expand(SkewShape(lam), mu, n, SHIFTED, SHIFTED)
        for nu in shapes:
            vals = (f_tableau(lam, mu, nu, n), f_hook(lam, mu, nu), f_recurrence(lam, mu, nu, n),
                    expansion.get(nu).constant())
            rows.append((format_partition(lam), format_partition(mu), format_partition(nu),
                         vals[0], len(set(vals)) == 1))
    return rows


def _c_rows(job) -> list:
    theta, box, n, engine, aseq, bseq = job
    shapes = [p for p in partitions_in_box(*box) if len(p) <= n]
    rows = []
    for mu in shapes:
        for nu in shapes:
            v = compute(engine, SkewShape(theta), mu, nu, n, aseq, bseq)
            rows.append((format_partition(theta), format_partition(mu), format_partition(nu), v))
    return rows


def cmd_table(args, err) -> tuple[int, str]:
    _warn_box(args.box, err)
    shapes = [p for p in partitions_in_box(*args.box) if len(p) <= args.n]
    if args.fs:
        chunks = _map(_fs_rows, [(lam, args.box, args.n) for lam in shapes], args.jobs)
        rows = [r for chunk in chunks for r in chunk]
        bad = sum(1 for r in rows if not r[4])
        header = ["lam", "mu", "nu", "n", "f", "agree"]
        flat = [[r[0], r[1], r[2], args.n, r[3], "yes" if r[4] else "no"] for r in rows]
        if bad:
            print(f"error: engines disagree on {bad} entries", file=err)
        if args.format == "json":
            body = {"schema": SCHEMA, "kind": "f", "box": list(args.box), "n": args.n,
                    "rows": [{"lam": r[0], "mu": r[1], "nu": r[2], "f": r[3], "agree": r[4]} for r in rows]}
            return (1 if bad else 0), _dump_json(body)
    else:
        engine = args.engine or "tableau"
        if engine == "enumerate":
            for theta in shapes:
                for mu in shapes:
                    for nu in shapes:
                        _guard(engine, SkewShape(theta), mu, nu, args.n, args.force, err)
        jobs = [(theta, args.box, args.n, engine, args.a, args.b) for theta in shapes]
        rows = [r for chunk in _map(_c_rows, jobs, args.jobs) for r in chunk]
        bad = 0
        header = ["theta", "mu", "nu", "n", "value"]
        flat = [[r[0], r[1], r[2], args.n, r[3].to_text()] for r in rows]
        if args.format == "json":
            body = {"schema": SCHEMA, "kind": "c", "engine": engine, "a": str(args.a), "b": str(args.b),
                    "box": list(args.box), "n": args.n,
                    "rows": [{"theta": r[0], "mu": r[1], "nu": r[2], "text": r[3].to_text(),
                              "value": r[3].to_json_obj()} for r in rows]}
            return 0, _dump_json(body)
    if args.format == "csv":
        return (1 if bad else 0), _csv_text(header, flat)
    lines = ["\t".join(header)] + ["\t".join(map(str, r)) for r in flat]
    return (1 if bad else 0), "\n".join(lines) + "\n"


def _suite_job(job):
    name, cfg = job
    return run_suite(name, cfg)


def cmd_verify(args, err) -> tuple[int, str]:
    _warn_box(args.box, err)
    cfg = SuiteConfig(box=args.box, n=args.n, seed=args.seed, points=args.points, max_size=args.max_size)
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = _map(_suite_job, [(name, cfg) for name in names], args.jobs)
    ok = all(r.ok for r in reports)
    if args.format == "json":
        body = {"schema": SCHEMA, "ok": ok,
                "config": {"box": list(cfg.box), "n": cfg.n, "seed": cfg.seed, "points": cfg.points,
                           "max_size": cfg.max_size},
                "suites": [r.to_json_obj() for r in reports]}
        return (0 if ok else 1), _dump_json(body)
    lines = []
    for r in reports:
        lines.append(r.line())
        lines.extend("  " + f for f in r.failures)
    return (0 if ok else 1), "\n".join(lines) + "\n"


def bench_workload(box, n: int, seed: int, points: int) -> list:
    """Seeded sample of (theta, mu, nu) with mu <= nu and |nu/mu| <= |theta|."""
    shapes = [p for p in partitions_in_box(*box) if len(p) <= n]
    pool = [(t, m, v) for t in shapes for m in shapes for v in shapes
            if contains(m, v) and contains(t, v) and sum(v) - sum(m) <= sum(t)]
    rng = random.Random(seed)
    picked = rng.sample(pool, min(points, len(pool)))
    return sorted(picked, key=lambda tr: (sum(map(sum, tr)), tr))


def _bench_one(job):
    engine, theta, mu, nu, n, aseq, bseq = job
    start = time.perf_counter_ns()
    v = compute(engine, SkewShape(theta), mu, nu, n, aseq, bseq)
    micros = (time.perf_counter_ns() - start) // 1000
    return v, micros


def cmd_bench(args, err) -> tuple[int, str]:
    _warn_box(args.box, err)
    engines = args.engine or ["tableau", "recurrence"]
    work = bench_workload(args.box, args.n, args.seed, args.points)
    for engine in engines:
        for theta, mu, nu in work:
            _guard(engine, SkewShape(theta), mu, nu, args.n, args.force, err)
    jobs = [(e, t, m, v, args.n, args.a, args.b) for t, m, v in work for e in engines]
    results = _map(_bench_one, jobs, args.jobs)
    rows, bad = [], 0
    for i, (theta, mu, nu) in enumerate(work):
        chunk = results[i * len(engines):(i + 1) * len(engines)]
        if len({v for v, _ in chunk}) != 1:
            bad += 1
            print(f"error: engines disagree at {theta} {mu} {nu}", file=err)
        for engine, (v, micros) in zip(engines, chunk):
            rows.append([engine, format_partition(theta), format_partition(mu), format_partition(nu),
                         args.n, micros, len(v)])
    header = ["engine", "theta", "mu", "nu", "n", "micros", "terms"]
    code = 1 if bad else 0
    if args.format == "json":
        return code, _dump_json({"schema": SCHEMA, "seed": args.seed,
                                 "rows": [dict(zip(header, r)) for r in rows]})
    if args.format == "csv":
        return code, _csv_text(header, rows)
    lines = ["\t".join(header)] + ["\t".join(map(str, r)) for r in rows]
    return code, "\n".join(lines) + "\n"


def cmd_selftest(args, err) -> tuple[int, str]:
    from .acceptance import CRITERIA, report_line

    lines, ok = [], True
    for c in CRITERIA:
        rep = c.run()
        ok = ok and rep.ok
        lines.append(report_line(c, rep))
        lines.extend("  " + f for f in rep.failures)
    return (0 if ok else 1), "\n".join(lines) + "\n"


VERBS = {
    "schur": cmd_schur,
    "facschur": cmd_facschur,
    "lrcoef": cmd_lrcoef,
    "table": cmd_table,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "selftest": cmd_selftest,
}


def run(argv: Optional[list] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    old_err = sys.stderr
    sys.stderr = err  # argparse writes its synopsis to sys.stderr
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    finally:
        sys.stderr = old_err
    try:
        code, data = VERBS[args.verb](args, err)
    except UsageError as e:
        print(f"faclr {args.verb}: {e}", file=err)
        parser.print_usage(err)
        return 2
    except FaclrError as e:
        print(f"faclr {args.verb}: {type(e).__name__}: {e}", file=err)
        return 2
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
    else:
        out.write(data)
    return code


def main() -> None:
    sys.exit(run())
