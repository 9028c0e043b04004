"""The twelve release criteria, each run at its fixed size.

Every criterion returns a SuiteReport; ``faclr selftest`` and
tests/test_acceptance.py both iterate over CRITERIA.
"""
from __future__ import annotations

import io
from typing import Callable, NamedTuple

from .suites import SuiteConfig, SuiteReport, run_suite

HH_SEED = 42

# (argv, label) pairs whose output must not change between runs
DETERMINISM_RUNS = (
    ["table", "--fs", "--box", "2x2", "--n", "2", "--format", "json"],
    ["table", "--box", "2x2", "--n", "2", "--format", "csv"],
    ["verify", "--suite", "hh", "--box", "2x2", "--n", "2", "--seed", "7", "--format", "json"],
    ["verify", "--suite", "fact", "--n", "4"],
)


class Criterion(NamedTuple):
    number: int
    title: str
    run: Callable[[], SuiteReport]


def _suite(name: str, **kw) -> Callable[[], SuiteReport]:
    return lambda: run_suite(name, SuiteConfig(**kw))


def determinism() -> SuiteReport:
    from .cli import run

    rep = SuiteReport("determinism")
    for argv in DETERMINISM_RUNS:
        outputs = []
        for _ in range(2):
            out, err = io.StringIO(), io.StringIO()
            code = run(argv, out=out, err=err)
            outputs.append((code, out.getvalue().encode()))
        same = outputs[0] == outputs[1] and outputs[0][0] == 0 and outputs[0][1]
        rep.check(bool(same), lambda: " ".join(argv))
    return rep


CRITERIA = (
    Criterion(1, "alternant ratio equals tableau sum", _suite("dual", n=3, max_size=4)),
    Criterion(2, "vanishing and diagonal product", _suite("vanishing", box=(3, 3), n=3)),
    Criterion(3, "four engines agree on f", _suite("oracle-agreement", box=(3, 3), n=3)),
    Criterion(4, "column-square coefficients are factorials", _suite("fact", n=6)),
    Criterion(5, "top degree is classical LR", _suite("degeneration", box=(3, 3), n=3)),
    Criterion(6, "transpose symmetry of f", _suite("symmetry", box=(4, 4), n=4)),
    Criterion(7, "skew hook datum", _suite("hook-datum")),
    Criterion(8, "H ratios and chain-sum formula", _suite("hh", box=(3, 3), n=3, seed=HH_SEED, points=5)),
    Criterion(9, "bar-moving identities", _suite("s-plus-minus", box=(2, 2), n=2)),
    Criterion(10, "expansion in ordinary Schur polynomials", _suite("g-expansion", n=3, max_size=4)),
    Criterion(11, "stability in n", _suite("stability", box=(3, 3))),
    Criterion(12, "byte-identical CLI output", determinism),
)


def report_line(c: Criterion, rep: SuiteReport) -> str:
    status = "PASS" if rep.ok else "FAIL"
    return f"criterion {c.number:2d} {status}: {c.title} ({rep.passed} passed, {rep.failed} failed)"
