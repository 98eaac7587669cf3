from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))
nonzero_rationals = rationals.filter(lambda q: q != 0)


def vectors(dim: int, elements=small_ints):
    return st.lists(elements, min_size=dim, max_size=dim).filter(lambda v: any(v))


def row_lists(dim: int, max_rows: int | None = None):
    return st.lists(st.lists(small_ints, min_size=dim, max_size=dim), min_size=0,
                    max_size=max_rows or dim)


def quadratic_pairs(d_values=(-1, 2, -3, 5)):
    """(d, a, b) describing a + b*sqrt(d)."""
    return st.tuples(st.sampled_from(d_values), rationals, rationals)
