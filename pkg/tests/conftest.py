from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from faclr.ring import MultiPoly
from faclr.shapes import partitions_in_box

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def polys(draw, families="xab", max_terms=4, max_index=3, max_exp=2):
    """Small sparse polynomials with rational coefficients."""
    total = MultiPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        term = MultiPoly.const(draw(rationals))
        for _ in range(draw(st.integers(0, 3))):
            fam = draw(st.sampled_from(families))
            term = term * MultiPoly.var(fam, draw(st.integers(1, max_index)), draw(st.integers(1, max_exp)))
        total = total + term
    return total


def box_partitions(rows, cols):
    return st.sampled_from(partitions_in_box(rows, cols))


def distinct_rationals(count):
    return st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=9),
                    min_size=count, max_size=count, unique=True)


__all__ = ["polys", "box_partitions", "distinct_rationals", "rationals", "Fraction"]
