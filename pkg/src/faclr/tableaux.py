"""Semistandard tableaux, column words, and barred tableaux.

Column order on cells is the column-word reading order: right-most column
first, each column top to bottom.  A barred tableau for a chain R carries bars
on cells alpha_1 < ... < alpha_l (column order) whose entries spell the
Yamanouchi symbol of R; each unbarred cell alpha is tagged with rho(alpha),
the diagram of R reached after the bars that precede it.
"""
from __future__ import annotations

import json
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

from .errors import IndexOutOfRange, NotContained, SizeMismatch
from .shapes import (
    Cell, Partition, ShapeChain, SkewShape, as_skew, chains, column_order,
    contains,
)


@dataclass(frozen=True)
class Tableau:
    shape: SkewShape
    entries: Mapping[Cell, int]
    barred: frozenset = field(default_factory=frozenset)

    def __hash__(self):
        return hash((self.shape, tuple(sorted(self.entries.items())), self.barred))

    def __getitem__(self, cell: Cell) -> int:
        return self.entries[cell]

    def is_semistandard(self) -> bool:
        if set(self.entries) != set(self.shape.cells()):
            return False
        for (i, j), v in self.entries.items():
            right = self.entries.get((i, j + 1))
            below = self.entries.get((i + 1, j))
            if right is not None and right < v:
                return False
            if below is not None and below <= v:
                return False
        return self.barred <= set(self.entries)

    def weight(self, n: int) -> tuple[int, ...]:
        w = [0] * n
        for v in self.entries.values():
            w[v - 1] += 1
        return tuple(w)

    def to_text(self) -> str:
        """Rows top to bottom; '.' marks cells of the inner shape, ' marks a bar."""
        lines = []
        for i, length in enumerate(self.shape.outer, 1):
            row = []
            for j in range(1, length + 1):
                if (i, j) not in self.entries:
                    row.append(".")
                else:
                    row.append(f"{self.entries[i, j]}" + ("'" if (i, j) in self.barred else ""))
            lines.append(" ".join(row))
        return " / ".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "Tableau":
        entries, barred, outer, inner = {}, set(), [], []
        for i, line in enumerate(text.split("/"), 1):
            toks = line.split()
            outer.append(len(toks))
            inner.append(sum(1 for t in toks if t == "."))
            for j, tok in enumerate(toks, 1):
                if tok == ".":
                    continue
                if tok.endswith("'"):
                    barred.add((i, j))
                    tok = tok[:-1]
                entries[i, j] = int(tok)
        return cls(SkewShape.of(outer, inner), entries, frozenset(barred))

    def to_json_obj(self) -> dict:
        return {
            "shape": str(self.shape),
            "cells": [{"row": i, "col": j, "entry": self.entries[i, j], "barred": (i, j) in self.barred}
                      for i, j in column_order(self.shape)],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Tableau":
        cells = obj["cells"]
        return cls(SkewShape.parse(obj["shape"]),
                   {(c["row"], c["col"]): c["entry"] for c in cells},
                   frozenset((c["row"], c["col"]) for c in cells if c["barred"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


@dataclass(frozen=True)
class BarAssignment:
    tableau: Tableau
    rho_of: Mapping[Cell, Partition]
    chain: ShapeChain

    def __hash__(self):
        return hash((self.tableau, tuple(sorted(self.rho_of.items()))))

    def validate(self) -> bool:
        """Re-check the barred-tableau invariants against the chain."""
        t = self.tableau
        if not t.is_semistandard():
            return False
        order = column_order(t.shape)
        bars = [c for c in order if c in t.barred]
        if tuple(t[c] for c in bars) != self.chain.yamanouchi:
            return False
        if set(self.rho_of) != set(order) - t.barred:
            return False
        seen = 0
        for c in order:
            if c in t.barred:
                seen += 1
            elif self.rho_of[c] != self.chain[seen]:
                return False
        return True


@lru_cache(maxsize=1024)
def _cell_bounds(shape: SkewShape) -> list[tuple[Cell, Optional[Cell], Optional[Cell]]]:
    """Cells in column order with the neighbour to the right and the one above (if in shape)."""
    out = []
    for i, j in column_order(shape):
        right = (i, j + 1) if (i, j + 1) in shape else None
        above = (i - 1, j) if (i - 1, j) in shape else None
        out.append(((i, j), right, above))
    return out


@lru_cache(maxsize=1024)
def _retired_rows(shape: SkewShape) -> list[tuple[int, ...]]:
    """For each cell in column order, the rows whose latest entry is no longer consulted."""
    out = []
    for (i, j), _, above in _cell_bounds(shape):
        done = []
        if above and (i - 1, j - 1) not in shape:
            done.append(i - 1)
        if (i + 1, j) not in shape and (i, j - 1) not in shape:
            done.append(i)
        out.append(tuple(done))
    return out


def enumerate_ssyt(shape, n: int) -> Iterator[Tableau]:
    """All semistandard fillings with entries 1..n, filled in column order."""
    shape = as_skew(shape)
    plan = _cell_bounds(shape)
    filling: dict[Cell, int] = {}

    def rec(k):
        if k == len(plan):
            yield Tableau(shape, dict(filling))
            return
        cell, right, above = plan[k]
        lo = filling[above] + 1 if above else 1
        hi = filling[right] if right else n
        for v in range(lo, hi + 1):
            filling[cell] = v
            yield from rec(k + 1)
        filling.pop(cell, None)

    yield from rec(0)


def column_word(t: Tableau) -> tuple[int, ...]:
    return tuple(t[c] for c in column_order(t.shape))


def is_lattice(word: Iterable[int]) -> bool:
    counts: dict[int, int] = {}
    for v in word:
        counts[v] = counts.get(v, 0) + 1
        if v > 1 and counts[v] > counts.get(v - 1, 0):
            return False
    return True


def fits(t: Tableau, target) -> Union[bool, ShapeChain]:
    """The chain spelled by cw(t) from target.inner to target.outer, or False."""
    target = as_skew(target)
    if len(t.entries) != target.size:
        raise SizeMismatch(f"tableau has {len(t.entries)} cells, target has {target.size}")
    chain = ShapeChain.from_yamanouchi(target.inner, column_word(t))
    if chain is None or chain.nu != target.outer:
        return False
    return chain


def _embeddings(word: tuple, pattern: tuple, start: int = 0) -> Iterator[tuple[int, ...]]:
    """Every increasing position tuple p with word[p[i]] == pattern[i]."""
    if not pattern:
        yield ()
        return
    head, rest = pattern[0], pattern[1:]
    for p in range(start, len(word) - len(rest)):
        if word[p] == head:
            for tail in _embeddings(word, rest, p + 1):
                yield (p,) + tail


def enumerate_barred(theta, R: ShapeChain, n: int) -> Iterator[BarAssignment]:
    theta = as_skew(theta)
    order = column_order(theta)
    for t in enumerate_ssyt(theta, n):
        word = tuple(t[c] for c in order)
        for pos in _embeddings(word, R.yamanouchi):
            barred = frozenset(order[p] for p in pos)
            rho_of, seen = {}, 0
            for p, c in enumerate(order):
                if seen < len(pos) and pos[seen] == p:
                    seen += 1
                else:
                    rho_of[c] = R[seen]
            yield BarAssignment(Tableau(theta, t.entries, barred), rho_of, R)


def enumerate_T(theta, mu: Partition, nu: Partition, n: int) -> Iterator[BarAssignment]:
    """Disjoint union of enumerate_barred over every chain from mu to nu."""
    if not contains(mu, nu):
        raise NotContained(f"{mu} is not inside {nu}")
    for R in chains(mu, nu):
        yield from enumerate_barred(theta, R, n)


def enumerate_barred_k(theta, R: ShapeChain, k: int, n: int) -> Iterator[tuple[BarAssignment, BarAssignment]]:
    """Tableaux barring every letter of R but the k-th, with the rho+ and rho- tags.

    Unbarred cells strictly between alpha_{k-1} and alpha_{k+1} get rho(k) in the
    plus assignment and rho(k-1) in the minus one; elsewhere both agree with R.
    """
    l = len(R)
    if not 1 <= k <= l:
        raise IndexOutOfRange(f"k={k} outside 1..{l}")
    theta = as_skew(theta)
    order = column_order(theta)
    pattern = R.yamanouchi[:k - 1] + R.yamanouchi[k:]
    for t in enumerate_ssyt(theta, n):
        word = tuple(t[c] for c in order)
        for pos in _embeddings(word, pattern):
            barred = frozenset(order[p] for p in pos)
            plus, minus, seen = {}, {}, 0
            for p, c in enumerate(order):
                if seen < len(pos) and pos[seen] == p:
                    seen += 1
                    continue
                if seen < k - 1:
                    plus[c] = minus[c] = R[seen]
                elif seen == k - 1:
                    plus[c], minus[c] = R[k], R[k - 1]
                else:
                    plus[c] = minus[c] = R[seen + 1]
            tab = Tableau(theta, t.entries, barred)
            yield BarAssignment(tab, plus, R), BarAssignment(tab, minus, R)


# weight(rho, entry, cell) -> factor contributed by an unbarred cell
Weight = Callable[[Partition, int, Cell], object]


def barred_sum(theta, mu: Partition, nu: Partition, n: int, weight: Weight,
               chain: Optional[ShapeChain] = None, one=1):
    """Sum over barred tableaux of the product of unbarred-cell weights.

    Equivalent to summing over enumerate_T (or enumerate_barred when ``chain`` is
    given) but computed as a transfer over cells in column order.  The state is
    the latest entry in each row together with the current diagram of the chain,
    so each (tableau, bar placement, chain) triple is counted exactly once.
    Diagrams handed to ``weight`` are zero-padded to length n.
    Returns ``None`` for an empty sum.
    """
    theta = as_skew(theta)
    plan = _cell_bounds(theta)
    rows = theta.rows
    if chain is not None:
        symbol = chain.yamanouchi
        target = len(chain)
        padded = [tuple(d) + (0,) * (n - len(d)) for d in chain.diagrams]
        start, final = 0, target

        def step(state, t):
            return state + 1 if state < target and symbol[state] == t else None

        def diagram(state):
            return padded[state]

        def bars_done(state):
            return state
    else:
        target = sum(nu) - sum(mu)
        nu_pad = tuple(nu) + (0,) * (n - len(nu))
        start = tuple(mu) + (0,) * (n - len(mu))
        final = nu_pad
        base = sum(mu)

        def step(rho, t):
            if t > n:
                return None
            r = rho[t - 1]
            if r >= nu_pad[t - 1] or (t > 1 and rho[t - 2] <= r):
                return None
            return rho[:t - 1] + (r + 1,) + rho[t:]

        def diagram(state):
            return state

        def bars_done(state):
            return sum(state) - base

    if target > len(plan) or len(start) > n and chain is None:
        return None
    step_memo: dict = {}
    need_memo: dict = {}
    retired = _retired_rows(theta)
    states = {((0,) * rows, start): one}
    remaining = len(plan)
    for (cell, right, above), clear in zip(plan, retired):
        remaining -= 1
        i = cell[0]
        new: dict = {}
        weights: dict = {}
        for (front, state), val in states.items():
            lo = front[above[0] - 1] + 1 if above else 1
            hi = front[i - 1] if right else n
            need = need_memo.get(state)
            if need is None:
                need = need_memo[state] = target - bars_done(state)
            for t in range(lo, hi + 1):
                nf = list(front)
                nf[i - 1] = t
                for r in clear:
                    nf[r - 1] = 0
                nf = tuple(nf)
                if need <= remaining:
                    wk = (state, t)
                    f = weights.get(wk)
                    if f is None:
                        f = weights[wk] = weight(diagram(state), t, cell)
                    if f != 0:
                        key = (nf, state)
                        v = val * f
                        old = new.get(key)
                        new[key] = v if old is None else old + v
                if need > 0:
                    sk = (state, t)
                    if sk in step_memo:
                        ns = step_memo[sk]
                    else:
                        ns = step_memo[sk] = step(state, t)
                    if ns is not None:
                        key = (nf, ns)
                        old = new.get(key)
                        new[key] = val if old is None else old + val
        states = new
    total = None
    for (_, state), val in states.items():
        if state == final:
            total = val if total is None else total + val
    return total
