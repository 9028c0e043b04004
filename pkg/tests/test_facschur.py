import pytest
from hypothesis import given
from hypothesis import strategies as st

from faclr.errors import NotContained, OutOfWindow, TooLong, UnassignedVariable
from faclr.facschur import (
    SYMBOLIC_A, ZERO_SEQ, SeqSpec, eval_at_partition, fac_schur, fac_schur_skew,
    falling_product, g_coeff, required_windows, schur, shifted_schur, vanishing_product,
)
from faclr.ring import ONE, IndexWindow, Specialization, a, b, homogeneous_component, poly_sum, x
from faclr.shapes import SkewShape, contains, hook_product, partitions_in_box, partitions_of

def keep_x(n):
    return {("x", i): x(i) for i in range(1, n + 1)}


SMALL = {n: [p for m in range(5) for p in partitions_of(m, n)] for n in (1, 2, 3)}


def test_falling_product():
    assert falling_product(x(1), 0, SYMBOLIC_A) == ONE
    assert falling_product(x(1), 2, SYMBOLIC_A) == (x(1) - a(1)) * (x(1) - a(2))
    assert falling_product(x(1), 3, ZERO_SEQ) == x(1) ** 3


def test_schur_examples():
    assert schur((1,), 2) == x(1) + x(2)
    assert schur((1, 1), 2) == x(1) * x(2)
    with pytest.raises(TooLong):
        schur((1, 1, 1), 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_schur_two_routes(n):
    for lam in SMALL[n]:
        assert schur(lam, n) == schur(lam, n, method="tableau"), lam


def test_fac_schur_examples():
    assert fac_schur((1,), 2) == x(1) + x(2) - a(1) - a(2)
    assert shifted_schur((1,), 2) == x(1) + x(2) - 1
    assert fac_schur((), 3) == ONE


@pytest.mark.parametrize("n", [1, 2, 3])
def test_alternant_equals_tableau_sum(n):
    for lam in SMALL[n]:
        assert fac_schur(lam, n, SYMBOLIC_A, "det") == fac_schur(lam, n, SYMBOLIC_A, "tableau"), lam


@pytest.mark.parametrize("n", [1, 2, 3])
def test_zero_sequence_and_top_degree(n):
    for lam in SMALL[n]:
        assert fac_schur(lam, n, ZERO_SEQ) == schur(lam, n)
        full = fac_schur(lam, n)
        assert homogeneous_component(full, sum(lam)) == schur(lam, n)
        assert (full - schur(lam, n)).x_degree() < max(sum(lam), 1)
        assert homogeneous_component(shifted_schur(lam, n), sum(lam)) == schur(lam, n)


def test_shifted_is_specialized_symbolic():
    s = Specialization(keep_x(3), a_rule="shifted")
    for lam in SMALL[3]:
        assert fac_schur(lam, 3).substitute(s) == shifted_schur(lam, 3)


@pytest.mark.parametrize("n", [2, 3])
def test_symmetric_in_x(n):
    for lam in SMALL[n]:
        p = fac_schur(lam, n)
        for i in range(1, n):
            assert p.permute_x({i: i + 1, i + 1: i}) == p


def test_vanishing_examples():
    assert not eval_at_partition((2,), (1,), 2)
    lam = (2, 1)
    assert eval_at_partition(lam, lam, 2) == vanishing_product(lam, 2)
    assert vanishing_product(lam, 2) != 0


def test_vanishing_box():
    box = partitions_in_box(3, 3)
    for lam in box:
        for rho in box:
            value = eval_at_partition(lam, rho, 3)
            if not contains(lam, rho):
                assert not value, (lam, rho)
            elif lam == rho:
                assert value == vanishing_product(lam, 3) and value


def test_shifted_diagonal_is_hook_product():
    s = Specialization(a_rule="shifted")
    for lam in partitions_in_box(3, 3):
        assert eval_at_partition(lam, lam, 3).substitute(s) == hook_product(lam)


def test_g_examples():
    assert g_coeff((1,), (), 2) == -(a(1) + a(2))
    for lam in partitions_in_box(2, 2):
        assert g_coeff(lam, lam, 2) == ONE
    with pytest.raises(NotContained):
        g_coeff((1,), (2,), 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_g_expansion_reassembles(n):
    for lam in SMALL[n]:
        below = [nu for nu in partitions_in_box(len(lam), lam[0] if lam else 0)
                 if contains(nu, lam) and len(nu) <= n]
        assert poly_sum(g_coeff(lam, nu, n) * schur(nu, n) for nu in below) == fac_schur(lam, n)


def test_skew_factorial_needs_low_b_indices():
    theta = SkewShape((2, 1), (1,))
    win = required_windows(theta, (), (2, 1), 2)
    assert win["b"] == IndexWindow(0, 3)
    strict = SeqSpec.symbolic("b", IndexWindow(1, 10))
    with pytest.raises(OutOfWindow):
        fac_schur_skew(theta, 2, strict)
    assert fac_schur_skew(theta, 2, SeqSpec.symbolic("b", win["b"])).x_degree() == 2


def test_windows_cover_engine_use():
    win = required_windows(SkewShape((2, 1)), (1,), (3, 1), 3)
    assert win["a"] == IndexWindow(1, 6)
    assert win["b"] == IndexWindow(1, 4)


def test_windows_are_enough_and_tight():
    from faclr.lrcoef import c_tableau
    from faclr.shapes import skew_shapes_in
    for theta in skew_shapes_in((3, 3, 3)):
        for n in (theta.rows, theta.rows + 1):
            if not theta.size or n == 0:
                continue
            win = required_windows(theta, (), theta.outer, n)
            if not theta.inner:
                assert 1 <= win["b"].lo and win["b"].hi <= n + theta.outer[0] - 1
            bseq = SeqSpec.symbolic("b", win["b"])
            aseq = SeqSpec.symbolic("a", win["a"])
            fac_schur_skew(theta, n, bseq)
            c_tableau(theta, (), theta.outer, n, aseq, bseq)
            used = {v.index for v in fac_schur_skew(theta, n, SeqSpec.symbolic("b")).variables()
                    if v.family == "b"}
            assert used and min(used) == win["b"].lo and max(used) == win["b"].hi, theta


def test_explicit_sequence():
    seq = SeqSpec.explicit({1: 0, 2: 5})
    assert seq(2) == 5
    with pytest.raises(OutOfWindow):
        seq(3)
    assert fac_schur((1,), 2, seq) == x(1) + x(2) - 5


@given(st.sampled_from(SMALL[2]), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_numeric_sequence_matches_substitution(lam, values):
    seq = SeqSpec.explicit({i: v for i, v in enumerate(values, 1)})
    spec = Specialization(keep_x(2), a_rule=dict(enumerate(values, 1)))
    assert fac_schur(lam, 2, seq) == fac_schur(lam, 2).substitute(spec)


def test_symbolic_b_is_a_renamed():
    p = fac_schur((2, 1), 2, SeqSpec.symbolic("b"))
    renamed = p.substitute(Specialization({**keep_x(2), **{("b", i): a(i) for i in range(1, 6)}}))
    assert renamed == fac_schur((2, 1), 2)
    assert b(1) not in [t for t in renamed.variables()]


def test_x_must_be_assigned():
    with pytest.raises(UnassignedVariable):
        fac_schur((1,), 2).substitute(Specialization(a_rule="zero"))
