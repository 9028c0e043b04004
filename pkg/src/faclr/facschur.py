"""Classical, factorial and shifted Schur polynomials.

Two routes to s_lambda(x|a) are kept side by side: the tableau sum, where each
cell contributes (x_{T(alpha)} - a_{T(alpha)+c(alpha)}), and the ratio of the
alternant det[(x_j|a)^{lambda_i+n-i}] to the Vandermonde product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Mapping, Optional, Sequence

from .errors import NotContained, OutOfWindow, TooLong
from .ring import (
    A, B, ONE, IndexWindow, MultiPoly, Specialization, _as_number, exact_div, x,
)
from .shapes import (
    Partition, SkewShape, a_rho_point, as_skew, conjugate, contains, content, part,
)
from .tableaux import barred_sum


@dataclass(frozen=True)
class SeqSpec:
    """A choice for one of the sequences a or b.

    kind is "symbolic" (variables of ``family``), "shifted" (i -> i-1),
    "zero", or "explicit" (``values`` holds ``(index, value)`` pairs).  A
    ``window`` restricts which indices may be requested.
    """

    kind: str
    family: str = A
    values: tuple = ()
    window: Optional[IndexWindow] = None
    _lookup: dict = field(default=None, init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.kind not in ("symbolic", "shifted", "zero", "explicit"):
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        object.__setattr__(self, "_lookup", dict(self.values))

    @classmethod
    def symbolic(cls, family: str = A, window: Optional[IndexWindow] = None) -> "SeqSpec":
        return cls("symbolic", family, window=window)

    @classmethod
    def shifted(cls) -> "SeqSpec":
        return cls("shifted")

    @classmethod
    def zero(cls) -> "SeqSpec":
        return cls("zero")

    @classmethod
    def explicit(cls, values: Mapping[int, object], family: str = A) -> "SeqSpec":
        items = tuple(sorted((int(i), _as_number(v)) for i, v in values.items()))
        win = IndexWindow(items[0][0], items[-1][0]) if items else IndexWindow(1, 0)
        return cls("explicit", family, items, win)

    @property
    def numeric(self) -> bool:
        return self.kind != "symbolic"

    def __call__(self, i: int):
        """The i-th term: a MultiPoly for symbolic sequences, else a number."""
        if self.window is not None:
            self.window.check(self.family, i)
        if self.kind == "symbolic":
            return _var(self.family, i)
        if self.kind == "shifted":
            return i - 1
        if self.kind == "zero":
            return 0
        try:
            return self._lookup[i]
        except KeyError:
            raise OutOfWindow(f"{self.family}{i} has no explicit value") from None

    def as_rule(self):
        """The equivalent Specialization rule (None when symbolic)."""
        if self.kind == "symbolic":
            return None
        if self.kind == "explicit":
            return dict(self.values)
        return self.kind

    def __str__(self):
        if self.kind == "symbolic":
            return f"symbolic-{self.family}"
        return self.kind


@lru_cache(maxsize=4096)
def _var(family: str, i: int) -> MultiPoly:
    return MultiPoly.var(family, i)


SYMBOLIC_A = SeqSpec.symbolic(A)
SYMBOLIC_B = SeqSpec.symbolic(B)
SHIFTED = SeqSpec.shifted()
ZERO_SEQ = SeqSpec.zero()


def _check_len(lam: Partition, n: int) -> None:
    if len(lam) > n:
        raise TooLong(f"{lam} has more than {n} rows")


def falling_product(y, k: int, seq: SeqSpec):
    """(y|a)^k = (y - a_1)...(y - a_k)."""
    out = ONE
    for i in range(1, k + 1):
        out = out * (y - seq(i))
    return out


def det(matrix: Sequence[Sequence]):
    """Determinant by Laplace expansion along rows, memoised on used columns."""
    n = len(matrix)
    if n == 0:
        return ONE
    memo: dict[int, object] = {}

    def rec(row: int, used: int):
        if row == n:
            return ONE
        if used in memo:
            return memo[used]
        total = None
        sign = 1
        for j in range(n):
            if used & (1 << j):
                continue
            entry = matrix[row][j]
            if entry != 0:
                term = entry * rec(row + 1, used | (1 << j))
                term = term if sign > 0 else -term
                total = term if total is None else total + term
            sign = -sign
        memo[used] = MultiPoly() if total is None else total
        return memo[used]

    return rec(0, 0)


def vandermonde(n: int) -> MultiPoly:
    out = ONE
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * (x(i) - x(j))
    return out


def tableau_sum(theta, xs: Sequence, seq: SeqSpec):
    """Sum over SSYT T of theta with entries 1..len(xs) of prod (x_{T} - a_{T+c}).

    Grouped by the cells holding the largest entry m, which form a horizontal
    strip: s_{lam/k}(x_1..x_m) = sum_mu s_{mu/k}(x_1..x_{m-1}) prod_{lam/mu}(x_m - a_{m+c}).
    ``xs`` may hold MultiPolys or numbers.
    """
    theta = as_skew(theta)
    inner = theta.inner
    memo: dict = {}

    def strip_factor(lam, mu, m):
        out = ONE
        xm = xs[m - 1]
        for i in range(1, len(lam) + 1):
            for j in range(part(mu, i) + 1, lam[i - 1] + 1):
                out = out * (xm - seq(m + j - i))
        return out

    def rec(lam: Partition, m: int):
        if m == 0:
            return ONE if lam == inner else None
        key = (lam, m)
        if key in memo:
            return memo[key]
        ranges = []
        for i in range(1, len(lam) + 1):
            lo = max(part(lam, i + 1), part(inner, i))
            ranges.append(range(lo, lam[i - 1] + 1))
        total = None
        for choice in iproduct(*ranges):
            mu = tuple(v for v in choice if v)
            # a column of mu/inner taller than m-1 cannot take entries below m
            if _tallest_column(mu, inner) > m - 1:
                continue
            sub = rec(mu, m - 1)
            if sub is None:
                continue
            term = sub * strip_factor(lam, mu, m)
            total = term if total is None else total + term
        memo[key] = total
        return total

    res = rec(tuple(theta.outer), len(xs))
    return MultiPoly() if res is None else res


def _tallest_column(outer: Partition, inner: Partition) -> int:
    co, ci = conjugate(outer), conjugate(inner)
    return max((c - part(ci, j) for j, c in enumerate(co, 1)), default=0)


def schur(lam: Partition, n: int, method: str = "bialternant") -> MultiPoly:
    """Classical Schur polynomial in x_1..x_n."""
    _check_len(lam, n)
    lam = tuple(lam)
    if method == "tableau":
        return tableau_sum(SkewShape(lam), [x(i) for i in range(1, n + 1)], ZERO_SEQ)
    if method != "bialternant":
        raise ValueError(f"unknown method {method!r}")
    m = [[x(j) ** (part(lam, i) + n - i) for j in range(1, n + 1)] for i in range(1, n + 1)]
    return exact_div(det(m), vandermonde(n))


@lru_cache(maxsize=2048)
def fac_schur(lam: Partition, n: int, seq: SeqSpec = SYMBOLIC_A, method: str = "tableau") -> MultiPoly:
    """Factorial Schur polynomial s_lambda(x|a) in x_1..x_n."""
    lam = tuple(lam)
    _check_len(lam, n)
    if method == "tableau":
        return tableau_sum(SkewShape(lam), [x(i) for i in range(1, n + 1)], seq)
    if method != "det":
        raise ValueError(f"unknown method {method!r}")
    powers = {}
    m = []
    for i in range(1, n + 1):
        k = part(lam, i) + n - i
        row = []
        for j in range(1, n + 1):
            if (j, k) not in powers:
                powers[j, k] = falling_product(x(j), k, seq)
            row.append(powers[j, k])
        m.append(row)
    return exact_div(det(m), vandermonde(n))


@lru_cache(maxsize=1024)
def fac_schur_skew(theta: SkewShape, n: int, seq: SeqSpec = SYMBOLIC_A) -> MultiPoly:
    """Skew factorial Schur polynomial, by the tableau sum."""
    theta = as_skew(theta)
    _check_len(theta.outer, n)
    return tableau_sum(theta, [x(i) for i in range(1, n + 1)], seq)


def shifted_schur(lam: Partition, n: int) -> MultiPoly:
    """s*_lambda(x): the factorial Schur polynomial at a_i = i - 1."""
    return fac_schur(tuple(lam), n, SHIFTED)


def a_point_values(rho: Partition, n: int, seq: SeqSpec = SYMBOLIC_A) -> list:
    """The n-tuple a_rho with each a_i replaced by seq(i)."""
    return [seq(v.index) for v in a_rho_point(rho, n)]


def eval_at_partition(lam: Partition, rho: Partition, n: int) -> MultiPoly:
    """s_lambda(a_rho|a) with symbolic a, by substitution into s_lambda(x|a)."""
    _check_len(lam, n)
    point = [MultiPoly.var(v.family, v.index) for v in a_rho_point(rho, n)]
    return fac_schur(tuple(lam), n, SYMBOLIC_A).substitute(Specialization.x_point(point))


def vanishing_product(lam: Partition, n: int, seq: SeqSpec = SYMBOLIC_A):
    """prod over cells (i,j) of (a_{lam_i+n-i+1} - a_{n-lam^t_j+j})."""
    _check_len(lam, n)
    lt = conjugate(lam)
    out = ONE
    for i, row in enumerate(lam, 1):
        for j in range(1, row + 1):
            out = out * (seq(row + n - i + 1) - seq(n - lt[j - 1] + j))
    return out


def g_coeff(lam: Partition, nu: Partition, n: int, seq: SeqSpec = SYMBOLIC_A) -> MultiPoly:
    """Coefficient of s_nu(x) in s_lambda(x|a).

    Signed sum over barred lambda-tableaux for chains from the empty partition
    to nu of the product of a_{T(alpha)+c(alpha)} over unbarred cells.
    """
    lam, nu = tuple(lam), tuple(nu)
    _check_len(lam, n)
    if not contains(nu, lam):
        raise NotContained(f"{nu} is not inside {lam}")
    if len(nu) > n:
        return MultiPoly()

    def weight(rho, t, cell):
        return -seq(t + content(cell))

    val = barred_sum(SkewShape(lam), (), nu, n, weight)
    if val is None:
        return MultiPoly()
    return val if isinstance(val, MultiPoly) else MultiPoly.const(val)


def numeric_value(v) -> Fraction:
    """Coerce a constant MultiPoly or number to a Fraction."""
    if isinstance(v, MultiPoly):
        v = v.constant()
    return Fraction(v)


def required_windows(theta: SkewShape, mu: Partition, nu: Partition, n: int) -> dict[str, IndexWindow]:
    """The a- and b-index ranges touched by any engine on (theta, mu, nu, n).

    a: indices of (a_rho)_k for mu <= rho <= nu, and of a_{T+c} in s_mu, s_nu.
    b: T(alpha)+c(alpha) over semistandard fillings of theta.  Column
    strictness pins cell (i,j) of lam/kappa between i - kappa^t_j and
    n - lam^t_j + i, so the index runs from j - kappa^t_j to n + j - lam^t_j.
    This drops below 1 only for skew theta.
    """
    theta = as_skew(theta)
    wide = max(part(nu, 1), part(theta.outer, 1), part(mu, 1))
    a_win = IndexWindow(1, wide + n)
    outer_t, inner_t = conjugate(theta.outer), conjugate(theta.inner)
    cols = {j for _, j in theta.cells()}
    if cols:
        lo = min(j - part(inner_t, j) for j in cols)
        hi = max(n + j - outer_t[j - 1] for j in cols)
        b_win = IndexWindow(lo, hi)
    else:
        b_win = IndexWindow(1, 0)
    return {A: a_win, B: b_win}
