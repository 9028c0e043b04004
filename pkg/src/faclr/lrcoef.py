"""Engines for the coefficients c^nu_{theta,mu}(a, b) and f^nu_{lambda,mu}.

c^nu_{theta,mu}(a,b) is the coefficient of s_nu(x|a) in s_theta(x|b) s_mu(x|a).
It is computed here by

* the barred-tableau sum (``c_tableau``),
* the recurrence on |nu/mu| started from c^mu_{theta,mu} = s_theta(a_mu|b)
  (``c_recurrence``),
* the H/H' chain sums at a numeric point (``c_hh``),

and, under a_i = i - 1, by the integer tableau formula ``f_tableau`` and the
skew-hook formula ``f_hook``.  The oracle module supplies the fourth, brute
force route.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable

from .errors import (
    EngineMismatch, NonIntegerResult, NotContained, TooLong, ZeroDenominator,
)
from .facschur import (
    SHIFTED, SYMBOLIC_A, SYMBOLIC_B, SeqSpec, a_point_values, tableau_sum,
)
from .ring import A, B, MultiPoly, Specialization, VarRef, exact_div, poly_sum
from .shapes import (
    Partition, ShapeChain, SkewShape, a_rho_index, as_skew, chains,
    contains, content, covers_above, covers_below, h_skew, hook_product, part,
)
from .tableaux import (
    barred_sum, column_word, enumerate_barred, enumerate_barred_k, enumerate_ssyt,
    enumerate_T, fits, is_lattice,
)

ENGINES = ("tableau", "recurrence", "hook", "oracle", "classical", "hh")


@dataclass(frozen=True)
class LRResult:
    theta: SkewShape
    mu: Partition
    nu: Partition
    n: int
    value: MultiPoly
    engine: str

    def __post_init__(self):
        if self.value.has_x():
            raise ValueError("coefficient must not involve x-variables")

    def to_json_obj(self) -> dict:
        from .shapes import format_partition
        return {
            "theta": str(self.theta),
            "mu": format_partition(self.mu),
            "nu": format_partition(self.nu),
            "n": self.n,
            "engine": self.engine,
            "value": self.value.to_json_obj(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def _as_poly(v) -> MultiPoly:
    if v is None:
        return MultiPoly()
    return v if isinstance(v, MultiPoly) else MultiPoly.const(v)


def _check_lengths(n: int, *parts: Partition) -> None:
    for p in parts:
        if len(p) > n:
            raise TooLong(f"{p} has more than {n} rows")


# -- classical Littlewood-Richardson -------------------------------------------

def lr_lattice_count(lam: Partition, mu: Partition, nu: Partition) -> int:
    """SSYT of shape nu/mu and weight lam whose column word is a lattice word."""
    if not contains(mu, nu) or sum(nu) != sum(lam) + sum(mu):
        return 0
    n = max(len(lam), 1)
    lam = tuple(lam)
    count = 0
    for t in enumerate_ssyt(SkewShape(tuple(nu), tuple(mu)), n):
        if t.weight(n) == lam + (0,) * (n - len(lam)) and is_lattice(column_word(t)):
            count += 1
    return count


def fits_count(theta, mu: Partition, nu: Partition) -> int:
    """theta-tableaux whose column word is the Yamanouchi symbol of a chain mu -> nu."""
    theta = as_skew(theta)
    if not contains(mu, nu) or sum(nu) - sum(mu) != theta.size:
        return 0
    target = SkewShape(tuple(nu), tuple(mu))
    return sum(1 for t in enumerate_ssyt(theta, max(len(nu), 1)) if fits(t, target) is not False)


def classical_lr(lam: Partition, mu: Partition, nu: Partition) -> int:
    """c^nu_{lam,mu} by the lattice-word count, checked against the fits count."""
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    if not (contains(lam, nu) and contains(mu, nu)) or sum(nu) != sum(lam) + sum(mu):
        return 0
    by_lattice = lr_lattice_count(lam, mu, nu)
    by_fits = fits_count(SkewShape(lam), mu, nu)
    if by_lattice != by_fits:
        raise EngineMismatch(f"lattice count {by_lattice} != fits count {by_fits} for {lam},{mu},{nu}")
    return by_lattice


# -- barred tableau engine ------------------------------------------------------

def _lr_weight(n: int, aseq: SeqSpec, bseq: SeqSpec):
    def weight(rho, t, cell):
        return aseq(a_rho_index(rho, t, n)) - bseq(t + content(cell))
    return weight


def c_tableau(theta, mu: Partition, nu: Partition, n: int,
              aseq: SeqSpec = SYMBOLIC_A, bseq: SeqSpec = SYMBOLIC_B,
              method: str = "transfer") -> LRResult:
    """Barred-tableau sum over every chain from mu to nu.

    ``method="transfer"`` sums cell by cell in column order (fast);
    ``method="enumerate"`` walks enumerate_T explicitly.
    """
    theta = as_skew(theta)
    mu, nu = tuple(mu), tuple(nu)
    _check_lengths(n, mu, nu, theta.outer)
    if not contains(mu, nu):
        return LRResult(theta, mu, nu, n, MultiPoly(), "tableau")
    weight = _lr_weight(n, aseq, bseq)
    if method == "transfer":
        value = _as_poly(barred_sum(theta, mu, nu, n, weight))
    elif method == "enumerate":
        value = poly_sum(_assignment_product(ba, weight) for ba in enumerate_T(theta, mu, nu, n))
    else:
        raise ValueError(f"unknown method {method!r}")
    return LRResult(theta, mu, nu, n, value, "tableau")


def _assignment_product(ba, weight):
    t = ba.tableau
    out = MultiPoly.const(1)
    for cell, rho in ba.rho_of.items():
        out = out * weight(rho, t[cell], cell)
    return out


def c_base(theta, mu: Partition, n: int, bseq: SeqSpec = SYMBOLIC_B,
           aseq: SeqSpec = SYMBOLIC_A) -> MultiPoly:
    """c^mu_{theta,mu}(a,b) = s_theta(a_mu|b)."""
    theta = as_skew(theta)
    _check_lengths(n, mu, theta.outer)
    return _as_poly(tableau_sum(theta, a_point_values(tuple(mu), n, aseq), bseq))


def _weight_value(rho: Partition, n: int, aseq: SeqSpec):
    return sum((aseq(a_rho_index(rho, k, n)) for k in range(1, n + 1)), MultiPoly())


@lru_cache(maxsize=None)
def _recurrence(theta: SkewShape, mu: Partition, nu: Partition, n: int,
                aseq: SeqSpec, bseq: SeqSpec) -> MultiPoly:
    if mu == nu:
        return c_base(theta, mu, n, bseq, aseq)
    up = [_recurrence(theta, m2, nu, n, aseq, bseq) for m2, _ in covers_above(mu, nu)]
    down = [_recurrence(theta, mu, n2, n, aseq, bseq) for n2, _ in covers_below(nu, mu)]
    numer = poly_sum(up) - poly_sum(down)
    denom = _weight_value(nu, n, aseq) - _weight_value(mu, n, aseq)
    if not denom:
        raise ZeroDenominator(f"|a_nu| - |a_mu| vanishes for mu={mu}, nu={nu}")
    return exact_div(numer, denom)


def c_recurrence(theta, mu: Partition, nu: Partition, n: int,
                 aseq: SeqSpec = SYMBOLIC_A, bseq: SeqSpec = SYMBOLIC_B) -> LRResult:
    """Induction on |nu/mu| from the base case, dividing exactly by |a_nu| - |a_mu|."""
    theta = as_skew(theta)
    mu, nu = tuple(mu), tuple(nu)
    _check_lengths(n, mu, nu, theta.outer)
    if not contains(mu, nu):
        return LRResult(theta, mu, nu, n, MultiPoly(), "recurrence")
    return LRResult(theta, mu, nu, n, _recurrence(theta, mu, nu, n, aseq, bseq), "recurrence")


# -- chain sums S(R), S_k^+(R), S_k^-(R) ----------------------------------------

def s_of_R(theta, R: ShapeChain, n: int, aseq: SeqSpec = SYMBOLIC_A,
           bseq: SeqSpec = SYMBOLIC_B) -> MultiPoly:
    """Contribution of the single chain R to c_tableau."""
    _check_lengths(n, *R.diagrams)
    weight = _lr_weight(n, aseq, bseq)
    return poly_sum(_assignment_product(ba, weight) for ba in enumerate_barred(theta, R, n))


def s_k_pm(theta, R: ShapeChain, k: int, n: int, aseq: SeqSpec = SYMBOLIC_A,
           bseq: SeqSpec = SYMBOLIC_B) -> tuple[MultiPoly, MultiPoly]:
    """(S_k^+(R), S_k^-(R)): the k-th bar dropped, window cells tagged rho(k) resp. rho(k-1)."""
    _check_lengths(n, *R.diagrams)
    weight = _lr_weight(n, aseq, bseq)
    plus, minus = [], []
    for bp, bm in enumerate_barred_k(theta, R, k, n):
        plus.append(_assignment_product(bp, weight))
        minus.append(_assignment_product(bm, weight))
    return poly_sum(plus), poly_sum(minus)


# -- H, H' and the chain-sum formula at a numeric point -------------------------

def _a_lookup(s: Specialization):
    def val(i: int) -> Fraction:
        v = s.lookup(VarRef(A, i).key)
        if v is None or isinstance(v, MultiPoly):
            raise ValueError(f"a{i} must be assigned a number")
        return Fraction(v)
    return val


def _abs_a(rho: Partition, n: int, aval) -> Fraction:
    return sum((aval(a_rho_index(rho, k, n)) for k in range(1, n + 1)), Fraction(0))


def _inv(d: Fraction) -> Fraction:
    if d == 0:
        raise ZeroDenominator("a chain denominator vanishes at this specialization")
    return 1 / d


def H_eval(mu: Partition, rho: Partition, n: int, s: Specialization) -> Fraction:
    """Sum over chains mu -> ... -> rho of 1/prod_{i<r} (|a_rho| - |a_rho(i)|)."""
    mu, rho = tuple(mu), tuple(rho)
    _check_lengths(n, mu, rho)
    if not contains(mu, rho):
        raise NotContained(f"{mu} is not inside {rho}")
    aval = _a_lookup(s)
    top = _abs_a(rho, n, aval)
    weights: dict = {}
    total = Fraction(0)
    for R in chains(mu, rho):
        term = Fraction(1)
        for d in R.diagrams[:-1]:
            if d not in weights:
                weights[d] = _abs_a(d, n, aval)
            term *= _inv(top - weights[d])
        total += term
    return total


def Hprime_eval(rho: Partition, nu: Partition, n: int, s: Specialization) -> Fraction:
    """Sum over chains rho -> ... -> nu of 1/prod_{i>r} (|a_rho| - |a_rho(i)|)."""
    rho, nu = tuple(rho), tuple(nu)
    _check_lengths(n, rho, nu)
    if not contains(rho, nu):
        raise NotContained(f"{rho} is not inside {nu}")
    aval = _a_lookup(s)
    base = _abs_a(rho, n, aval)
    weights: dict = {}
    total = Fraction(0)
    for R in chains(rho, nu):
        term = Fraction(1)
        for d in R.diagrams[1:]:
            if d not in weights:
                weights[d] = _abs_a(d, n, aval)
            term *= _inv(base - weights[d])
        total += term
    return total


def interval(lower: Partition, upper: Partition) -> list[Partition]:
    """Partitions rho with lower <= rho <= upper."""
    lower, upper = tuple(lower), tuple(upper)
    if not contains(lower, upper):
        return []
    ranges = []
    for i in range(1, len(upper) + 1):
        ranges.append(range(part(lower, i), upper[i - 1] + 1))
    out = []
    for choice in iproduct(*ranges):
        if all(choice[i] >= choice[i + 1] for i in range(len(choice) - 1)):
            out.append(tuple(v for v in choice if v))
    return out


def c_hh(theta, mu: Partition, nu: Partition, n: int, s: Specialization):
    """sum_{mu <= rho <= nu} s_theta(a_rho|b) H(mu,rho) H'(rho,nu) at the point s.

    Unassigned b-variables stay symbolic, in which case a MultiPoly in b is
    returned; otherwise the value is an exact Fraction.
    """
    theta = as_skew(theta)
    mu, nu = tuple(mu), tuple(nu)
    _check_lengths(n, mu, nu, theta.outer)
    if not contains(mu, nu):
        return Fraction(0)
    aval = _a_lookup(s)

    def bval(i):
        v = s.lookup(VarRef(B, i).key)
        return MultiPoly.var(B, i) if v is None else v

    total = MultiPoly()
    for rho in interval(mu, nu):
        point = [aval(a_rho_index(rho, k, n)) for k in range(1, n + 1)]
        s_theta = tableau_sum(theta, point, bval)
        coeff = H_eval(mu, rho, n, s) * Hprime_eval(rho, nu, n, s)
        total = total + s_theta * coeff
    return Fraction(total.constant()) if total.is_constant() else total


def telescoping_sum(us: Iterable) -> Fraction:
    """sum_i 1/((u1-u2)...(u1-u_i)(u_k-u_i)...(u_k-u_{k-1})); zero for k > 1."""
    u = [Fraction(v) for v in us]
    k = len(u)
    total = Fraction(0)
    for i in range(1, k + 1):
        d = Fraction(1)
        for j in range(2, i + 1):
            d *= u[0] - u[j - 1]
        for j in range(i, k):
            d *= u[k - 1] - u[j - 1]
        total += _inv(d)
    return total


# -- the shifted specialization a_i = i - 1 ------------------------------------

def f_tableau(lam: Partition, mu: Partition, nu: Partition, n: int) -> int:
    """Integer tableau sum with unbarred factor rho(alpha)_T + n - 2T - c(alpha) + 1."""
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    _check_lengths(n, lam, mu, nu)
    if not contains(mu, nu):
        return 0

    def weight(rho, t, cell):
        return part(rho, t) + n - 2 * t - content(cell) + 1

    val = barred_sum(SkewShape(lam), mu, nu, n, weight)
    return 0 if val is None else val


def f_hook(lam: Partition, mu: Partition, nu: Partition) -> int:
    """sum over lam, mu <= rho <= nu of (-1)^{|nu/rho|} h(rho) / (h(nu/rho) h(rho/lam) h(rho/mu))."""
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    length = max(len(lam), len(mu))
    union = tuple(max(part(lam, i), part(mu, i)) for i in range(1, length + 1))
    total = Fraction(0)
    for rho in interval(union, nu):
        sign = -1 if (sum(nu) - sum(rho)) % 2 else 1
        total += sign * hook_product(rho) / (
            h_skew(SkewShape(nu, rho)) * h_skew(SkewShape(rho, lam)) * h_skew(SkewShape(rho, mu)))
    if total.denominator != 1:
        raise NonIntegerResult(f"hook sum {total} for {lam},{mu},{nu} is not an integer")
    return total.numerator


def f_recurrence(lam: Partition, mu: Partition, nu: Partition, n: int) -> int:
    """c_recurrence at a = b = (i - 1)."""
    val = c_recurrence(SkewShape(tuple(lam)), mu, nu, n, SHIFTED, SHIFTED).value
    return int(val.constant())
