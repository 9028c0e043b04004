"""Sparse multivariate polynomials with exact rational coefficients.

Variables come in three indexed families: ``x`` (indices 1..n), and the
integer-indexed sequences ``a`` and ``b``.  A monomial is a tuple of
``(key, exponent)`` pairs sorted by key, where the integer key packs the
family and index so that sorting by key orders variables as
``x1 < x2 < ... < a_i < ... < b_j < ...`` (family, then index).

Terms are ordered by graded lexicographic order with that variable ranking
(``x1`` is the largest variable).  This order fixes the canonical text and
JSON forms and drives exact division.

Coefficients are ``int`` or ``fractions.Fraction``; a Fraction with unit
denominator is always stored as ``int``.
"""
from __future__ import annotations

import heapq
import json
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .errors import NotDivisible, OutOfWindow, UnassignedVariable, ZeroDenominator

X, A, B = "x", "a", "b"
FAMILIES = (X, A, B)
_FAMILY_CODE = {X: 0, A: 1, B: 2}
_OFFSET = 1 << 31
_KEY_BIG = 1 << 80

Number = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[int, int], ...]


def _key(family: str, index: int) -> int:
    return (_FAMILY_CODE[family] << 32) | (index + _OFFSET)


def _unkey(key: int) -> tuple[str, int]:
    return FAMILIES[key >> 32], (key & 0xFFFFFFFF) - _OFFSET


_X_LIMIT = _key(A, -_OFFSET)  # every x-key is below this


def _norm(c) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _as_number(c) -> Number:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"not an exact rational: {c!r}")


class VarRef(NamedTuple):
    family: str
    index: int

    @property
    def key(self) -> int:
        return _key(self.family, self.index)

    def __str__(self):
        return f"{self.family}{self.index}"


class IndexWindow(NamedTuple):
    """Inclusive index range ``lo..hi`` for one variable family."""

    lo: int
    hi: int

    def __contains__(self, i) -> bool:  # type: ignore[override]
        return self.lo <= i <= self.hi

    def check(self, family: str, i: int) -> None:
        if not self.lo <= i <= self.hi:
            raise OutOfWindow(f"{family}{i} outside window {self.lo}..{self.hi}")

    def union(self, other: "IndexWindow") -> "IndexWindow":
        return IndexWindow(min(self.lo, other.lo), max(self.hi, other.hi))


_mono_cache: dict = {}


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    try:
        return _mono_cache[m1, m2]
    except KeyError:
        pass
    d = dict(m1)
    for k, e in m2:
        d[k] = d.get(k, 0) + e
    m = tuple(sorted(d.items()))
    if len(_mono_cache) > 500_000:
        _mono_cache.clear()
    _mono_cache[m1, m2] = m
    return m


def _mono_div(m1: Monomial, m2: Monomial):
    """m1 / m2 if m2 divides m1, else None."""
    d = dict(m1)
    for k, e in m2:
        have = d.get(k, 0)
        if have < e:
            return None
        if have == e:
            del d[k]
        else:
            d[k] = have - e
    return tuple(sorted(d.items()))


def _degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _x_degree(m: Monomial) -> int:
    return sum(e for k, e in m if k < _X_LIMIT)


def _order_key(m: Monomial):
    """Ascending sort on this key lists monomials from grlex-largest down."""
    return (-_degree(m), tuple((k, -e) for k, e in m) + ((_KEY_BIG, 0),))


class MultiPoly:
    """Immutable sparse polynomial in the x, a and b families."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        if terms:
            self.terms = {m: _as_number(c) for m, c in terms.items() if c != 0}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = _as_number(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, family: str, index: int, power: int = 1) -> "MultiPoly":
        if family not in _FAMILY_CODE:
            raise ValueError(f"unknown variable family {family!r}")
        if family == X and index < 1:
            raise ValueError(f"x-variables are indexed from 1, got x{index}")
        if power < 0:
            raise ValueError("negative exponent")
        if power == 0:
            return cls._raw({(): 1})
        return cls._raw({((_key(family, index), power),): 1})

    # -- basic protocol -------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        res = dict(self.terms)
        for m, c in o.terms.items():
            v = res.get(m)
            if v is None:
                res[m] = c
            else:
                v = _norm(v + c)
                if v:
                    res[m] = v
                else:
                    del res[m]
        return MultiPoly._raw(res)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "MultiPoly":
        c = _as_number(c)
        if not c:
            return MultiPoly._raw({})
        if c == 1:
            return self
        return MultiPoly._raw({m: _norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, MultiPoly):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return MultiPoly._raw({})
        p, q = self.terms, other.terms
        if len(p) < len(q):
            p, q = q, p
        res: dict = {}
        get = res.get
        for m2, c2 in q.items():
            for m1, c1 in p.items():
                m = _mono_mul(m1, m2)
                v = get(m)
                res[m] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._raw({m: _norm(c) for m, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- queries --------------------------------------------------------

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant(self) -> Number:
        """The value of a constant polynomial (raises if not constant)."""
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((), 0)

    def variables(self) -> set[VarRef]:
        out = set()
        for m in self.terms:
            for k, _ in m:
                out.add(VarRef(*_unkey(k)))
        return out

    def degree(self) -> int:
        return max((_degree(m) for m in self.terms), default=-1)

    def x_degree(self) -> int:
        """Total degree in the x-variables; -1 for the zero polynomial."""
        return max((_x_degree(m) for m in self.terms), default=-1)

    def has_x(self) -> bool:
        return any(m and m[0][0] < _X_LIMIT for m in self.terms)

    def ordered_terms(self) -> list[tuple[Monomial, Number]]:
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]))

    def leading_term(self) -> tuple[Monomial, Number]:
        m = min(self.terms, key=_order_key)
        return m, self.terms[m]

    # -- operations named in the module contract ------------------------

    def homogeneous_component(self, d: int) -> "MultiPoly":
        if d < 0:
            raise ValueError("degree must be nonnegative")
        return MultiPoly._raw({m: c for m, c in self.terms.items() if _x_degree(m) == d})

    def split_x(self) -> dict[tuple, "MultiPoly"]:
        """Group terms by their x-part: ``{x-monomial: coefficient in a, b}``."""
        groups: dict = {}
        for m, c in self.terms.items():
            xs = tuple(t for t in m if t[0] < _X_LIMIT)
            rest = m[len(xs):]
            groups.setdefault(xs, {})[rest] = c
        return {xm: MultiPoly._raw(t) for xm, t in groups.items()}

    def permute_x(self, perm: Mapping[int, int]) -> "MultiPoly":
        """Rename x_i to x_{perm[i]} (indices absent from perm are fixed)."""
        kmap = {_key(X, i): _key(X, j) for i, j in perm.items()}
        res: dict = {}
        for m, c in self.terms.items():
            nm = tuple(sorted((kmap.get(k, k), e) for k, e in m))
            res[nm] = c
        return MultiPoly._raw(res)

    def exact_div(self, d: "MultiPoly") -> "MultiPoly":
        return exact_div(self, d)

    def substitute(self, s: "Specialization") -> "MultiPoly":
        return substitute(self, s)

    # -- serialization --------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.ordered_terms()):
            neg = c < 0
            mag = -c if neg else c
            factors = []
            for k, e in m:
                fam, idx = _unkey(k)
                factors.append(f"{fam}{idx}" + (f"^{e}" if e != 1 else ""))
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = " * ".join(factors)
            else:
                body = " * ".join([str(mag)] + factors)
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    @classmethod
    def from_text(cls, text: str) -> "MultiPoly":
        return parse_poly(text)

    def to_json_obj(self) -> dict:
        terms = []
        for m, c in self.ordered_terms():
            mono: dict = {}
            for k, e in m:
                fam, idx = _unkey(k)
                mono.setdefault(fam, {})[str(idx)] = e
            terms.append({"c": str(c), "m": mono})
        return {"terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "MultiPoly":
        terms: dict = {}
        for t in obj["terms"]:
            m = []
            for fam in FAMILIES:
                for idx, e in t["m"].get(fam, {}).items():
                    if e <= 0:
                        raise ValueError("exponents must be positive")
                    m.append((_key(fam, int(idx)), int(e)))
            mono = tuple(sorted(m))
            terms[mono] = terms.get(mono, 0) + Fraction(t["c"])
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_obj(json.loads(text))


ZERO = MultiPoly()
ONE = MultiPoly.const(1)


def x(i: int) -> MultiPoly:
    return MultiPoly.var(X, i)


def a(i: int) -> MultiPoly:
    return MultiPoly.var(A, i)


def b(i: int) -> MultiPoly:
    return MultiPoly.var(B, i)


def const(c) -> MultiPoly:
    return MultiPoly.const(c)


def add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def poly_sum(items: Iterable) -> MultiPoly:
    """Sum MultiPolys (or numbers) accumulating in place."""
    res: dict = {}
    for item in items:
        if not isinstance(item, MultiPoly):
            item = MultiPoly.const(item)
        for m, c in item.terms.items():
            res[m] = res.get(m, 0) + c
    return MultiPoly._raw({m: _norm(c) for m, c in res.items() if c})


def homogeneous_component(p: MultiPoly, d: int) -> MultiPoly:
    return p.homogeneous_component(d)


def exact_div(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Divide ``p`` by ``d`` under grlex; raise NotDivisible on a remainder."""
    if not d.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    lm_d, lc_d = d.leading_term()
    if lm_d == ():
        inv = Fraction(1) / lc_d
        return p.scale(inv)
    rest = [(m, c) for m, c in d.terms.items() if m != lm_d]
    work = dict(p.terms)
    heap = [(_order_key(m), m) for m in work]
    heapq.heapify(heap)
    quot: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        qm = _mono_div(m, lm_d)
        if qm is None:
            raise NotDivisible(f"leading term {MultiPoly._raw({m: c})} not divisible by {MultiPoly._raw({lm_d: lc_d})}")
        qc = _norm(Fraction(c) / lc_d)
        quot[qm] = qc
        for m2, c2 in rest:
            nm = _mono_mul(qm, m2)
            v = work.get(nm)
            if v is None:
                work[nm] = _norm(-qc * c2)
                heapq.heappush(heap, (_order_key(nm), nm))
            else:
                v = _norm(v - qc * c2)
                if v:
                    work[nm] = v
                else:
                    del work[nm]
    return MultiPoly._raw(quot)


class Specialization:
    """An assignment of values to variables.

    ``values`` maps VarRefs to exact rationals or MultiPolys.  Unassigned a- and
    b-variables stay symbolic unless a rule is given for their family: ``"zero"``,
    ``"shifted"`` (index i -> i-1) or an explicit ``{index: value}`` mapping, in
    which case a missing index is an OutOfWindow error.
    """

    def __init__(self, values: Mapping[VarRef, object] | None = None, *,
                 a_rule=None, b_rule=None):
        self.values: dict[int, object] = {}
        for v, val in (values or {}).items():
            if not isinstance(v, VarRef):
                v = VarRef(*v)
            self.values[v.key] = val if isinstance(val, MultiPoly) else _as_number(val)
        for rule in (a_rule, b_rule):
            if rule is not None and not (rule in ("zero", "shifted") or isinstance(rule, Mapping)):
                raise ValueError(f"bad rule {rule!r}")
        self.rules = {1: a_rule, 2: b_rule}

    @classmethod
    def x_point(cls, point: Iterable, **kw) -> "Specialization":
        return cls({VarRef(X, i): v for i, v in enumerate(point, 1)}, **kw)

    def lookup(self, key: int):
        """Value for a variable key, or None if it stays symbolic."""
        v = self.values.get(key)
        if v is not None:
            return v
        fam_code = key >> 32
        if fam_code == 0:
            raise UnassignedVariable(f"x{_unkey(key)[1]} is not assigned")
        rule = self.rules[fam_code]
        if rule is None:
            return None
        idx = _unkey(key)[1]
        if rule == "zero":
            return 0
        if rule == "shifted":
            return idx - 1
        try:
            return _as_number(rule[idx])
        except KeyError:
            raise OutOfWindow(f"{FAMILIES[fam_code]}{idx} has no explicit value") from None

    def numeric_values(self, family: str) -> list:
        code = _FAMILY_CODE[family]
        vals = [v for k, v in self.values.items() if k >> 32 == code]
        rule = self.rules.get(code)
        if isinstance(rule, Mapping):
            vals.extend(_as_number(v) for v in rule.values())
        return vals

    def check_distinct(self, family: str = A) -> None:
        vals = self.numeric_values(family)
        if len(set(vals)) != len(vals):
            raise ZeroDenominator(f"{family}-values are not pairwise distinct")


def substitute(p: MultiPoly, s: Specialization) -> MultiPoly:
    res: dict = {}
    cache: dict = {}
    poly_parts: list[MultiPoly] = []
    for m, c in p.terms.items():
        coef = c
        keep = []
        polys = []
        for k, e in m:
            ck = (k, e)
            if ck in cache:
                val = cache[ck]
            else:
                base = s.lookup(k)
                val = None if base is None else base ** e
                cache[ck] = val
            if val is None:
                keep.append((k, e))
            elif isinstance(val, MultiPoly):
                polys.append(val)
            else:
                coef = coef * val
                if not coef:
                    break
        if not coef:
            continue
        mono = tuple(keep)
        if polys:
            acc = MultiPoly._raw({mono: _norm(coef)})
            for q in polys:
                acc = acc * q
            poly_parts.append(acc)
        else:
            res[mono] = res.get(mono, 0) + coef
    out = MultiPoly._raw({m: _norm(c) for m, c in res.items() if c})
    if poly_parts:
        out = poly_sum([out, *poly_parts])
    return out


_TERM_SPLIT = re.compile(r"\s+([+-])\s+")
_FACTOR = re.compile(r"^([xab])(-?\d+)(?:\^(\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str) -> MultiPoly:
    """Parse the canonical text form (and any reordering of it)."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:].lstrip()
    pieces = _TERM_SPLIT.split(text)
    signs = [sign] + [1 if s == "+" else -1 for s in pieces[1::2]]
    res: dict = {}
    for sg, term in zip(signs, pieces[0::2]):
        coef: Number = sg
        mono: dict[int, int] = {}
        for f in (t.strip() for t in term.split("*")):
            if _NUMBER.match(f):
                coef = coef * Fraction(f)
                continue
            mt = _FACTOR.match(f)
            if not mt:
                raise ValueError(f"cannot parse factor {f!r}")
            fam, idx, e = mt.group(1), int(mt.group(2)), int(mt.group(3) or 1)
            if fam == X and idx < 1:
                raise ValueError(f"bad x index in {f!r}")
            k = _key(fam, idx)
            mono[k] = mono.get(k, 0) + e
        m = tuple(sorted(mono.items()))
        res[m] = res.get(m, 0) + coef
    return MultiPoly(res)


def iter_x_monomials(p: MultiPoly) -> Iterator[tuple[Monomial, MultiPoly]]:
    yield from p.split_x().items()


def x_exponents(xm: Monomial, n: int) -> tuple[int, ...]:
    """Dense exponent vector (length n) of an x-only monomial."""
    out = [0] * n
    for k, e in xm:
        fam, idx = _unkey(k)
        if fam != X or idx > n:
            raise ValueError(f"monomial uses {fam}{idx}, outside x1..x{n}")
        out[idx - 1] = e
    return tuple(out)


def x_monomial(exps: Iterable[int]) -> Monomial:
    return tuple((_key(X, i), e) for i, e in enumerate(exps, 1) if e)
