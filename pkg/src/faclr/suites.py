"""Identity checks shared by ``faclr verify``, ``faclr selftest`` and the test suite.

Each suite walks a finite family of inputs and records one pass or fail per
checked identity.  Failures are collected as data, never raised.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from .facschur import (
    SHIFTED, SYMBOLIC_A, SYMBOLIC_B, SeqSpec, eval_at_partition, fac_schur, g_coeff,
    schur, tableau_sum, vanishing_product,
)
from .lrcoef import (
    H_eval, c_hh, c_tableau, classical_lr, f_hook, f_recurrence, f_tableau, s_k_pm, s_of_R,
)
from .oracle import product_expand
from .ring import MultiPoly, Specialization, poly_sum
from .shapes import (
    SkewShape, a_rho_index, a_weight, chains, conjugate, contains, dim_skew, format_partition,
    h_skew, partitions_in_box, partitions_of,
)

SUITES = (
    "vanishing", "degeneration", "fact", "symmetry", "s-plus-minus", "hh", "stability",
    "oracle-agreement", "dual", "g-expansion", "hook-datum",
)
MAX_FAILURES_KEPT = 20


@dataclass
class SuiteConfig:
    box: tuple = (3, 3)
    n: int = 3
    seed: int = 0
    points: int = 5
    max_size: int = 4


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok: bool, label: Callable[[], str]) -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(label())

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json_obj(self) -> dict:
        return {"name": self.name, "passed": self.passed, "failed": self.failed,
                "failures": list(self.failures)}

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.passed} passed, {self.failed} failed"


def _fmt(*parts) -> str:
    return " ".join(format_partition(p) if isinstance(p, tuple) else str(p) for p in parts)


def _box(cfg: SuiteConfig, max_len=None) -> list:
    rows, cols = cfg.box
    limit = cfg.n if max_len is None else max_len
    return [p for p in partitions_in_box(rows, cols) if len(p) <= limit]


def _as_poly(v) -> MultiPoly:
    return v if isinstance(v, MultiPoly) else MultiPoly.const(v)


def vanishing(cfg: SuiteConfig) -> SuiteReport:
    """s_lam(a_rho|a) = 0 off containment, and the product formula at rho = lam."""
    rep = SuiteReport("vanishing")
    box = _box(cfg)
    for lam in box:
        for rho in box:
            if lam == rho:
                got = eval_at_partition(lam, rho, cfg.n)
                rep.check(got == vanishing_product(lam, cfg.n), lambda: _fmt("diag", lam, got.to_text()))
            elif not contains(lam, rho):
                got = eval_at_partition(lam, rho, cfg.n)
                rep.check(not got, lambda: _fmt(lam, rho, got.to_text()))
    return rep


def degeneration(cfg: SuiteConfig) -> SuiteReport:
    """Top-degree coefficients are classical LR numbers; beyond top degree they vanish."""
    rep = SuiteReport("degeneration")
    box = _box(cfg)
    for theta in box:
        for mu in box:
            for nu in box:
                excess = sum(nu) - sum(theta) - sum(mu)
                if excess < 0:
                    continue
                got = c_tableau(SkewShape(theta), mu, nu, cfg.n).value
                want = classical_lr(theta, mu, nu) if excess == 0 else 0
                rep.check(got.is_constant() and got == want,
                          lambda: _fmt(theta, mu, nu, got.to_text(), "want", want))
    return rep


def fact(cfg: SuiteConfig) -> SuiteReport:
    """f^nu_{(1^m)(1^m)} is (m-r)! at nu = (2^r 1^(m-r)) and 0 elsewhere in (2^m)."""
    rep = SuiteReport("fact")
    for m in range(1, cfg.n + 1):
        col = (1,) * m
        for nu in partitions_in_box(m, 2):
            if len(nu) == m:
                r = sum(1 for v in nu if v == 2)
                want = factorial(m - r)
            else:
                want = 0
            got = f_tableau(col, col, nu, m)
            rep.check(got == want, lambda: _fmt(m, nu, got, "want", want))
    return rep


def symmetry(cfg: SuiteConfig) -> SuiteReport:
    """f^{nu^t}_{lam^t mu^t} = f^nu_{lam mu}."""
    rep = SuiteReport("symmetry")
    box = partitions_in_box(*cfg.box)
    fits_n = [p for p in box if len(p) <= cfg.n and len(conjugate(p)) <= cfg.n]
    for lam in fits_n:
        for mu in fits_n:
            for nu in fits_n:
                got = f_tableau(lam, mu, nu, cfg.n)
                want = f_tableau(conjugate(lam), conjugate(mu), conjugate(nu), cfg.n)
                rep.check(got == want, lambda: _fmt(lam, mu, nu, got, want))
    return rep


def s_plus_minus(cfg: SuiteConfig) -> SuiteReport:
    """S_k^+ - S_k^- = (|a_rho(k)| - |a_rho(k-1)|) S(R), and the summed bar identity."""
    rep = SuiteReport("s-plus-minus")
    box = _box(cfg)
    n = cfg.n
    for theta in box:
        for mu in box:
            for nu in box:
                if not contains(mu, nu) or mu == nu:
                    continue
                minus_total, plus_total = MultiPoly(), MultiPoly()
                for R in chains(mu, nu):
                    s_r = s_of_R(SkewShape(theta), R, n)
                    l = len(R)
                    for k in range(1, l + 1):
                        plus, minus = s_k_pm(SkewShape(theta), R, k, n)
                        gap = a_weight(R[k], n) - a_weight(R[k - 1], n)
                        rep.check(plus - minus == gap * s_r, lambda: _fmt(theta, R, k))
                        if k < l:
                            minus_total = minus_total + minus
                        if k > 1:
                            plus_total = plus_total + plus
                rep.check(minus_total == plus_total, lambda: _fmt("sum", theta, mu, nu))
    return rep


def random_a_values(rng: random.Random, count: int, box: tuple, n: int) -> dict:
    """Pairwise distinct rationals a_1..a_count with |a_rho| distinct across the box."""
    shapes = [p for p in partitions_in_box(*box) if len(p) <= n]
    while True:
        vals = {}
        used = set()
        for i in range(1, count + 1):
            v = Fraction(rng.randint(-999, 999), rng.randint(1, 97))
            while v in used:
                v += 1
            used.add(v)
            vals[i] = v
        weights = [sum(vals[a_rho_index(p, k, n)] for k in range(1, n + 1)) for p in shapes]
        if len(set(weights)) == len(weights):
            return vals


def hh(cfg: SuiteConfig) -> SuiteReport:
    """At random rational a: s_mu(a_nu|a)/s_nu(a_nu|a) = H(mu,nu) and c_hh = c_tableau.

    theta runs over the partitions inside (2,1); b stays symbolic.
    """
    rep = SuiteReport("hh")
    rng = random.Random(cfg.seed)
    box = _box(cfg)
    thetas = [p for p in partitions_in_box(2, 2) if contains(p, (2, 1)) and len(p) <= cfg.n]
    n = cfg.n
    for _ in range(cfg.points):
        vals = random_a_values(rng, cfg.box[1] + n + 1, cfg.box, n)
        aseq = SeqSpec.explicit(vals)
        spec = Specialization(a_rule=vals)
        for nu in box:
            point = [vals[a_rho_index(nu, k, n)] for k in range(1, n + 1)]
            denom = tableau_sum(SkewShape(nu), point, aseq).constant()
            for mu in box:
                if not contains(mu, nu):
                    continue
                ratio = Fraction(tableau_sum(SkewShape(mu), point, aseq).constant()) / denom
                h = H_eval(mu, nu, n, spec)
                rep.check(ratio == h, lambda: _fmt("ratio", mu, nu, ratio, h))
                for theta in thetas:
                    got = _as_poly(c_hh(SkewShape(theta), mu, nu, n, spec))
                    want = c_tableau(SkewShape(theta), mu, nu, n, aseq, SYMBOLIC_B).value
                    rep.check(got == want, lambda: _fmt("chh", theta, mu, nu))
    return rep


def stability(cfg: SuiteConfig) -> SuiteReport:
    """f_tableau does not change when n grows past the longest partition."""
    rep = SuiteReport("stability")
    box = partitions_in_box(*cfg.box)
    for lam in box:
        for mu in box:
            for nu in box:
                n0 = max(len(lam), len(mu), len(nu), 1)
                vals = [f_tableau(lam, mu, nu, n0 + d) for d in range(3)]
                rep.check(len(set(vals)) == 1, lambda: _fmt(lam, mu, nu, vals))
    return rep


def oracle_agreement(cfg: SuiteConfig) -> SuiteReport:
    """f by the tableau, hook, recurrence and brute-force expansion engines agree."""
    rep = SuiteReport("oracle-agreement")
    box = _box(cfg)
    for lam in box:
        for mu in box:
            expansion = product_expand(SkewShape(lam), mu, cfg.n, SHIFTED, SHIFTED)
            for nu in box:
                vals = (
                    f_tableau(lam, mu, nu, cfg.n),
                    f_hook(lam, mu, nu),
                    f_recurrence(lam, mu, nu, cfg.n),
                    expansion.get(nu).constant(),
                )
                rep.check(len(set(vals)) == 1, lambda: _fmt(lam, mu, nu, vals))
    return rep


def _small_partitions(cfg: SuiteConfig, n: int) -> list:
    return [p for m in range(cfg.max_size + 1) for p in partitions_of(m, n)]


def dual(cfg: SuiteConfig) -> SuiteReport:
    """The alternant ratio and the tableau sum give the same s_lam(x|a)."""
    rep = SuiteReport("dual")
    for n in range(2, cfg.n + 1):
        for lam in _small_partitions(cfg, n):
            ok = fac_schur(lam, n, SYMBOLIC_A, "det") == fac_schur(lam, n, SYMBOLIC_A, "tableau")
            rep.check(ok, lambda: _fmt(lam, n))
    return rep


def g_expansion(cfg: SuiteConfig) -> SuiteReport:
    """s_lam(x|a) = sum_{nu <= lam} g_{lam nu}(a) s_nu(x)."""
    rep = SuiteReport("g-expansion")
    for n in range(1, cfg.n + 1):
        for lam in _small_partitions(cfg, n):
            below = [nu for nu in partitions_in_box(len(lam), lam[0] if lam else 0)
                     if contains(nu, lam) and len(nu) <= n]
            total = poly_sum(g_coeff(lam, nu, n) * schur(nu, n) for nu in below)
            rep.check(total == fac_schur(lam, n), lambda: _fmt(lam, n))
    return rep


def hook_datum(cfg: SuiteConfig) -> SuiteReport:
    """h((3,2)/(1)) = 24/5 with five standard tableaux."""
    rep = SuiteReport("hook-datum")
    shape = SkewShape((3, 2), (1,))
    rep.check(h_skew(shape) == Fraction(24, 5), lambda: f"h = {h_skew(shape)}")
    rep.check(dim_skew(shape) == 5, lambda: f"dim = {dim_skew(shape)}")
    return rep


RUNNERS: dict[str, Callable[[SuiteConfig], SuiteReport]] = {
    "vanishing": vanishing,
    "degeneration": degeneration,
    "fact": fact,
    "symmetry": symmetry,
    "s-plus-minus": s_plus_minus,
    "hh": hh,
    "stability": stability,
    "oracle-agreement": oracle_agreement,
    "dual": dual,
    "g-expansion": g_expansion,
    "hook-datum": hook_datum,
}


def run_suite(name: str, cfg: SuiteConfig) -> SuiteReport:
    return RUNNERS[name](cfg)
