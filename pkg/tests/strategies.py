from hypothesis import strategies as st

from supcomp.kernel.scalars import INF

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=8)
nonneg_fractions = st.fractions(min_value=0, max_value=10, max_denominator=8)
ext_nonneg = st.one_of(nonneg_fractions, st.just(INF))
masks = st.lists(st.booleans(), min_size=3, max_size=3)


def coords(elements, size=3):
    return st.lists(elements, min_size=size, max_size=size)
