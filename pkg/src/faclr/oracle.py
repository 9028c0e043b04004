"""Brute-force expansion of symmetric polynomials in the factorial Schur basis.

The leading x-monomial (graded, then lexicographic with x1 largest) of a
nonzero symmetric polynomial is x^lam for a partition lam, and s_lam(x|a) has
leading monomial x^lam with coefficient 1.  Peeling off leading terms
therefore recovers the coefficients one partition at a time.  Since a
symmetric polynomial is determined by its terms whose x-exponents are weakly
decreasing, all bookkeeping is done on those terms only.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NonTerminating, NotSymmetric
from .facschur import SYMBOLIC_A, SYMBOLIC_B, SeqSpec, fac_schur, fac_schur_skew
from .ring import MultiPoly, x_exponents
from .shapes import Partition, as_skew, format_partition


@dataclass
class Expansion:
    coeffs: dict = field(default_factory=dict)
    remainder: MultiPoly = field(default_factory=MultiPoly)

    def get(self, nu: Partition) -> MultiPoly:
        return self.coeffs.get(tuple(nu), MultiPoly())

    def to_json_obj(self) -> dict:
        return {
            "coeffs": {format_partition(k): v.to_json_obj() for k, v in sorted(self.coeffs.items())},
            "remainder": self.remainder.to_json_obj(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def is_symmetric(p: MultiPoly, n: int) -> bool:
    """Invariance under each adjacent transposition of x-variables."""
    return all(p.permute_x({i: i + 1, i + 1: i}) == p for i in range(1, n))


def _dominant_table(p: MultiPoly, n: int) -> dict[tuple, MultiPoly]:
    table = {}
    for xm, coeff in p.split_x().items():
        e = x_exponents(xm, n)
        if all(e[i] >= e[i + 1] for i in range(n - 1)):
            table[e] = coeff
    return table


@lru_cache(maxsize=4096)
def _basis_table(lam: Partition, n: int, aseq: SeqSpec) -> dict[tuple, MultiPoly]:
    return _dominant_table(fac_schur(lam, n, aseq), n)


def _lead(table: dict) -> tuple:
    return max(table, key=lambda e: (sum(e), e))


def expand(p: MultiPoly, n: int, aseq: SeqSpec = SYMBOLIC_A, *, full_remainder: bool = False) -> Expansion:
    """Coefficients c_nu with p = sum_nu c_nu s_nu(x|a).

    With ``full_remainder`` the remainder p - sum c_nu s_nu(x|a) is recomputed
    over all monomials instead of being read off the dominant terms.
    """
    if not is_symmetric(p, n):
        raise NotSymmetric("polynomial is not symmetric in x1..x%d" % n)
    table = _dominant_table(p, n)
    coeffs: dict = {}
    last = None
    while table:
        e = _lead(table)
        rank = (sum(e), e)
        if last is not None and rank >= last:
            raise NonTerminating(f"leading exponent {e} did not decrease")
        last = rank
        lam = tuple(v for v in e if v)
        c = table[e]
        coeffs[lam] = c
        for e2, b in _basis_table(lam, n, aseq).items():
            v = table.get(e2)
            delta = c * b
            v = -delta if v is None else v - delta
            if v:
                table[e2] = v
            else:
                table.pop(e2, None)
    if full_remainder:
        rem = p
        for lam, c in coeffs.items():
            rem = rem - c * fac_schur(lam, n, aseq)
    else:
        rem = MultiPoly()
    return Expansion(coeffs, rem)


def product_expand(theta, mu: Partition, n: int, aseq: SeqSpec = SYMBOLIC_A,
                   bseq: SeqSpec = SYMBOLIC_B, *, full_remainder: bool = False) -> Expansion:
    """Expand s_theta(x|b) s_mu(x|a) in the basis s_nu(x|a)."""
    theta = as_skew(theta)
    p = fac_schur_skew(theta, n, bseq) * fac_schur(tuple(mu), n, aseq)
    return expand(p, n, aseq, full_remainder=full_remainder)
