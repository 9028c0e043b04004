"""Partitions, skew shapes and saturated chains in Young's lattice.

Partitions are plain tuples of positive ints in weakly decreasing order; the
empty tuple is the empty partition.  Cells are ``(row, col)`` pairs, 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial, prod
from typing import Iterable, Iterator, NamedTuple, Optional

from .errors import NotContained, TooLong
from .ring import A, MultiPoly, VarRef, poly_sum

Partition = tuple  # tuple[int, ...]
Cell = tuple  # (row, col)


def partition(parts: Iterable[int]) -> Partition:
    """Validate and trim trailing zeros."""
    p = list(parts)
    while p and p[-1] == 0:
        p.pop()
    if any(v < 0 for v in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"not a partition: {tuple(parts)}")
    return tuple(p)


def part(lam: Partition, i: int) -> int:
    """lambda_i with 1-based i; zero beyond the length."""
    return lam[i - 1] if i <= len(lam) else 0


def size(lam: Partition) -> int:
    return sum(lam)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0", "()", "[]"):
        return ()
    return partition(int(t) for t in text.split(","))


def format_partition(lam: Partition) -> str:
    return ",".join(map(str, lam)) if lam else "0"


class SkewShape(NamedTuple):
    outer: Partition
    inner: Partition = ()

    @classmethod
    def of(cls, outer: Iterable[int], inner: Iterable[int] = ()) -> "SkewShape":
        o, i = partition(outer), partition(inner)
        if not contains(i, o):
            raise NotContained(f"{i} is not inside {o}")
        return cls(o, i)

    @classmethod
    def parse(cls, text: str) -> "SkewShape":
        if "/" in text:
            o, i = text.split("/", 1)
            return cls.of(parse_partition(o), parse_partition(i))
        return cls.of(parse_partition(text))

    def __str__(self):
        if self.inner:
            return f"{format_partition(self.outer)}/{format_partition(self.inner)}"
        return format_partition(self.outer)

    @property
    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)

    @property
    def rows(self) -> int:
        return len(self.outer)

    def cells(self) -> list[Cell]:
        """Cells in row-major order."""
        return [(i, j) for i in range(1, len(self.outer) + 1)
                for j in range(part(self.inner, i) + 1, self.outer[i - 1] + 1)]

    def __contains__(self, cell) -> bool:  # type: ignore[override]
        i, j = cell
        return 1 <= i <= len(self.outer) and part(self.inner, i) < j <= self.outer[i - 1]

    def conjugate(self) -> "SkewShape":
        return SkewShape(conjugate(self.outer), conjugate(self.inner))


def as_skew(theta) -> SkewShape:
    if isinstance(theta, SkewShape):
        return theta
    return SkewShape.of(theta)


def content(cell: Cell) -> int:
    return cell[1] - cell[0]


def column_order(shape: SkewShape) -> list[Cell]:
    """Cells in column-word reading order: right-most column first, top to bottom."""
    cols: dict[int, list[Cell]] = {}
    for c in shape.cells():
        cols.setdefault(c[1], []).append(c)
    return [c for j in sorted(cols, reverse=True) for c in sorted(cols[j])]


def contains(mu: Partition, nu: Partition) -> bool:
    return len(mu) <= len(nu) and all(m <= v for m, v in zip(mu, nu))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for v in lam if v > j) for j in range(lam[0]))


def add_cell(rho: Partition, row: int) -> Optional[Partition]:
    """rho with a cell appended to ``row``, or None if that is not a partition."""
    r = part(rho, row)
    if row > len(rho) + 1 or (row > 1 and part(rho, row - 1) <= r):
        return None
    if row == len(rho) + 1:
        return rho + (1,)
    return rho[:row - 1] + (r + 1,) + rho[row:]


def remove_cell(rho: Partition, row: int) -> Optional[Partition]:
    r = part(rho, row)
    if r == 0 or part(rho, row + 1) >= r:
        return None
    return partition(rho[:row - 1] + (r - 1,) + rho[row:])


def covers_above(rho: Partition, bound: Optional[Partition] = None) -> list[tuple[Partition, int]]:
    """All sigma with rho -> sigma (inside ``bound`` if given), with the added row."""
    out = []
    for row in range(1, len(rho) + 2):
        s = add_cell(rho, row)
        if s is not None and (bound is None or contains(s, bound)):
            out.append((s, row))
    return out


def covers_below(rho: Partition, bound: Optional[Partition] = None) -> list[tuple[Partition, int]]:
    """All sigma with sigma -> rho (containing ``bound`` if given), with the removed row."""
    out = []
    for row in range(1, len(rho) + 1):
        s = remove_cell(rho, row)
        if s is not None and (bound is None or contains(bound, s)):
            out.append((s, row))
    return out


@dataclass(frozen=True)
class ShapeChain:
    """A saturated chain mu = rho(0) -> ... -> rho(l) = nu with its Yamanouchi symbol."""

    diagrams: tuple
    yamanouchi: tuple

    def __post_init__(self):
        if len(self.diagrams) != len(self.yamanouchi) + 1:
            raise ValueError("chain needs one more diagram than symbol letters")
        for k, r in enumerate(self.yamanouchi):
            if add_cell(self.diagrams[k], r) != self.diagrams[k + 1]:
                raise ValueError(f"step {k + 1} of {self} is not a cover in row {r}")

    @classmethod
    def from_yamanouchi(cls, mu: Partition, symbol: Iterable[int]) -> Optional["ShapeChain"]:
        """Rebuild the chain by adding cells row by row; None if a step is illegal."""
        diagrams = [tuple(mu)]
        symbol = tuple(symbol)
        for r in symbol:
            nxt = add_cell(diagrams[-1], r)
            if nxt is None:
                return None
            diagrams.append(nxt)
        return cls(tuple(diagrams), symbol)

    @property
    def mu(self) -> Partition:
        return self.diagrams[0]

    @property
    def nu(self) -> Partition:
        return self.diagrams[-1]

    def __len__(self):
        return len(self.yamanouchi)

    def __getitem__(self, k: int) -> Partition:
        return self.diagrams[k]

    def __str__(self):
        return " -> ".join("(" + ",".join(map(str, d)) + ")" for d in self.diagrams)


def chains(mu: Partition, nu: Partition) -> Iterator[ShapeChain]:
    """Every saturated chain from mu to nu, in lexicographic order of Yamanouchi symbols."""
    mu, nu = tuple(mu), tuple(nu)
    if not contains(mu, nu):
        raise NotContained(f"{mu} is not inside {nu}")

    def walk(rho, diagrams, symbol):
        if rho == nu:
            yield ShapeChain(tuple(diagrams), tuple(symbol))
            return
        for sigma, row in covers_above(rho, nu):
            diagrams.append(sigma)
            symbol.append(row)
            yield from walk(sigma, diagrams, symbol)
            diagrams.pop()
            symbol.pop()

    yield from walk(mu, [mu], [])


def hooks(lam: Partition) -> list[int]:
    lt = conjugate(lam)
    return [lam[i] - j + lt[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def hook_product(lam: Partition) -> int:
    return prod(hooks(lam))


@cache
def _dim(inner: Partition, outer: Partition) -> int:
    if inner == outer:
        return 1
    return sum(_dim(s, outer) for s, _ in covers_above(inner, outer))


def dim_skew(shape: SkewShape) -> int:
    """Number of standard tableaux of the skew shape (saturated chain count)."""
    shape = as_skew(shape)
    if not contains(shape.inner, shape.outer):
        return 0
    return _dim(shape.inner, shape.outer)


def h_skew(shape: SkewShape) -> Fraction:
    """|nu/mu|! / dim(nu/mu); not always an integer."""
    shape = as_skew(shape)
    if not contains(shape.inner, shape.outer):
        raise NotContained(f"{shape.inner} is not inside {shape.outer}")
    return Fraction(factorial(shape.size), _dim(shape.inner, shape.outer))


def a_rho_point(rho: Partition, n: int) -> tuple[VarRef, ...]:
    """(a_{rho_1+n}, ..., a_{rho_n+1})."""
    if len(rho) > n:
        raise TooLong(f"{rho} has more than {n} rows")
    return tuple(VarRef(A, part(rho, k) + n - k + 1) for k in range(1, n + 1))


def a_rho_index(rho: Partition, k: int, n: int) -> int:
    """Index of (a_rho)_k, the k-th entry of a_rho."""
    return part(rho, k) + n - k + 1


def a_weight(rho: Partition, n: int) -> MultiPoly:
    """|a_rho| as a linear polynomial in a."""
    return poly_sum(MultiPoly.var(v.family, v.index) for v in a_rho_point(rho, n))


def partitions_in_box(rows: int, cols: int) -> list[Partition]:
    """All partitions fitting a rows x cols box, by size then reverse-lex."""
    out = []

    def rec(prefix, maxpart):
        out.append(tuple(prefix))
        if len(prefix) == rows:
            return
        for v in range(min(maxpart, cols), 0, -1):
            prefix.append(v)
            rec(prefix, v)
            prefix.pop()

    rec([], cols)
    return sorted(out, key=lambda p: (sum(p), tuple(-v for v in p)))


def partitions_of(m: int, max_len: Optional[int] = None) -> list[Partition]:
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        if max_len is not None and len(prefix) == max_len:
            return
        for v in range(min(rest, maxpart), 0, -1):
            prefix.append(v)
            rec(rest - v, v, prefix)
            prefix.pop()

    rec(m, m, [])
    return out


def skew_shapes_in(outer_bound: Partition) -> list[SkewShape]:
    """All skew shapes outer/inner with inner <= outer <= outer_bound."""
    rows = len(outer_bound)
    cols = outer_bound[0] if outer_bound else 0
    parts = [p for p in partitions_in_box(rows, cols) if contains(p, outer_bound)]
    return [SkewShape(o, i) for o in parts for i in parts if contains(i, o)]
