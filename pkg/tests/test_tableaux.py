import pytest
from hypothesis import given
from hypothesis import strategies as st

from faclr.errors import IndexOutOfRange, NotContained, SizeMismatch
from faclr.facschur import schur
from faclr.ring import ONE, poly_sum, x
from faclr.shapes import (
    ShapeChain, SkewShape, chains, column_order, contains, partitions_in_box, partitions_of, skew_shapes_in,
)
from faclr.tableaux import (
    Tableau, barred_sum, column_word, enumerate_barred, enumerate_barred_k, enumerate_ssyt,
    enumerate_T, fits, is_lattice,
)

EXAMPLE = Tableau.from_text(". . 1 2 / . 1 3 / 2")  # cw = 21312 on (4,3,1)/(2,1)
THETA = SkewShape((3, 2), (1,))
R21 = ShapeChain.from_yamanouchi((2, 1), (2, 1))


def test_ssyt_examples():
    assert [t.to_text() for t in enumerate_ssyt(SkewShape((1,)), 2)] == ["1", "2"]
    assert sum(1 for _ in enumerate_ssyt(SkewShape((2, 1)), 3)) == 8
    assert list(enumerate_ssyt(SkewShape((1, 1, 1)), 2)) == []


def test_ssyt_all_valid_and_distinct():
    ts = list(enumerate_ssyt(SkewShape((3, 2), (1,)), 3))
    assert all(t.is_semistandard() for t in ts)
    assert len(set(ts)) == len(ts)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ssyt_monomials_give_schur(n):
    for lam in (p for m in range(5) for p in partitions_of(m, n)):
        total = poly_sum(
            _monomial(t) for t in enumerate_ssyt(SkewShape(lam), n))
        assert total == schur(lam, n), lam


def _monomial(t):
    out = ONE
    for v in t.entries.values():
        out = out * x(v)
    return out


def test_column_word_example():
    t = Tableau.from_text("1 1 2 / 2 3")
    assert column_word(t) == (2, 1, 3, 1, 2)
    assert column_word(Tableau.from_text("7")) == (7,)
    assert column_word(EXAMPLE) == (2, 1, 3, 1, 2)


def test_lattice_examples():
    assert not is_lattice((2, 1, 3, 1, 2))
    assert is_lattice((1, 1, 2, 1, 2))
    assert is_lattice(())


def test_fits_example():
    chain = fits(Tableau.from_text("1 1 2 / 2 3"), SkewShape((4, 3, 1), (2, 1)))
    assert chain.diagrams == ((2, 1), (2, 2), (3, 2), (3, 2, 1), (4, 2, 1), (4, 3, 1))
    assert fits(Tableau.from_text("1 1 2 / 2 3"), SkewShape((5,))) is False
    with pytest.raises(SizeMismatch):
        fits(Tableau.from_text("1 1"), SkewShape((3,)))


def test_fits_normal_target_is_lattice_with_matching_weight():
    for size in range(1, 6):
        for nu in partitions_of(size):
            target = SkewShape(nu)
            for lam in partitions_of(size):
                for t in enumerate_ssyt(SkewShape(lam), len(nu)):
                    lattice = is_lattice(column_word(t)) and t.weight(len(nu)) == nu
                    assert (fits(t, target) is not False) == lattice


def test_text_and_json_round_trip():
    t = Tableau.from_text(". 1' 2' / 1 2")
    assert t.to_text() == ". 1' 2' / 1 2"
    assert Tableau.from_json_obj(t.to_json_obj()) == t
    assert t.barred == frozenset({(1, 2), (1, 3)})


def test_barred_example_set():
    got = {b.tableau.to_text() for b in enumerate_barred(THETA, R21, 2)}
    assert got == {
        ". 1 1 / 1' 2'",
        ". 1' 2' / 1 2",
        ". 1 2' / 1' 2",
        ". 1 2 / 1' 2'",
        ". 1' 2' / 2 2",
    }


def test_empty_chain_gives_plain_tableaux():
    R = ShapeChain.from_yamanouchi((1,), ())
    got = list(enumerate_barred(THETA, R, 2))
    plain = list(enumerate_ssyt(THETA, 2))
    assert len(got) == len(plain) and all(not b.tableau.barred for b in got)


def test_union_over_chains():
    assert sum(1 for _ in chains((2, 1), (3, 2))) == 2
    allT = list(enumerate_T(THETA, (2, 1), (3, 2), 2))
    per_chain = sum(sum(1 for _ in enumerate_barred(THETA, R, 2)) for R in chains((2, 1), (3, 2)))
    assert len(allT) == per_chain == len(set(allT))
    with pytest.raises(NotContained):
        list(enumerate_T(THETA, (3,), (2, 2), 2))


SMALL = [s for s in skew_shapes_in((2, 2)) if s.size]


@given(st.sampled_from(SMALL), st.sampled_from(partitions_in_box(2, 3)),
       st.sampled_from(partitions_in_box(2, 3)))
def test_barred_streams_validate_and_are_distinct(theta, mu, nu):
    if not contains(mu, nu):
        return
    seen = set()
    for ba in enumerate_T(theta, mu, nu, 2):
        assert ba.validate()
        key = (ba.tableau, ba.chain)
        assert key not in seen
        seen.add(key)


def test_bar_k_degenerate_window():
    R = ShapeChain.from_yamanouchi((1,), (1,))
    pairs = list(enumerate_barred_k(SkewShape((2, 1)), R, 1, 2))
    assert len(pairs) == sum(1 for _ in enumerate_ssyt(SkewShape((2, 1)), 2))
    for plus, minus in pairs:
        assert not plus.tableau.barred
        assert set(plus.rho_of.values()) == {(2,)}
        assert set(minus.rho_of.values()) == {(1,)}
    with pytest.raises(IndexOutOfRange):
        list(enumerate_barred_k(SkewShape((2, 1)), R, 2, 2))


def test_bar_k_contains_erased_tableaux():
    for k in (1, 2):
        window = {(tuple(sorted(p.tableau.entries.items())), p.tableau.barred)
                  for p, _ in enumerate_barred_k(THETA, R21, k, 2)}
        order = column_order(THETA)
        for ba in enumerate_barred(THETA, R21, 2):
            bars = [c for c in order if c in ba.tableau.barred]
            erased = ba.tableau.barred - {bars[k - 1]}
            assert (tuple(sorted(ba.tableau.entries.items())), erased) in window


def test_bar_k_tags_differ_only_in_window():
    order = column_order(THETA)
    for k in (1, 2):
        for plus, minus in enumerate_barred_k(THETA, R21, k, 2):
            bars = [order.index(c) for c in order if c in plus.tableau.barred]
            lo = bars[k - 2] if k >= 2 else -1
            hi = bars[k - 1] if k - 1 < len(bars) else len(order)
            for c in plus.rho_of:
                if plus.rho_of[c] != minus.rho_of[c]:
                    assert lo < order.index(c) < hi


def test_transfer_sum_matches_enumeration():
    def weight(rho, t, cell):
        return sum(rho) * 3 + t * 7 + cell[1] - cell[0] + 1

    for theta in SMALL:
        for mu in partitions_in_box(2, 2):
            for nu in partitions_in_box(2, 3):
                if not contains(mu, nu):
                    continue
                direct = 0
                for ba in enumerate_T(theta, mu, nu, 2):
                    term = 1
                    for c, rho in ba.rho_of.items():
                        term *= weight(rho, ba.tableau[c], c)
                    direct += term
                got = barred_sum(theta, mu, nu, 2, weight)
                assert (got or 0) == direct, (theta, mu, nu)
