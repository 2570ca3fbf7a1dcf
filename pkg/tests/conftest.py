"""Shared hypothesis strategies for the test suite."""

from hypothesis import assume, strategies as st

from multiquad.intmath import is_squarefree
from multiquad.radicands import is_primitive

# squarefree radicands of small height, both signs, plus -1
SMALL_RADICANDS = [-1] + [s * m for m in range(2, 31) if is_squarefree(m)
                          for s in (1, -1)]


@st.composite
def primitive_lists(draw, min_n=1, max_n=4, imaginary=None):
    n = draw(st.integers(min_n, max_n))
    entries = tuple(draw(st.lists(
        st.sampled_from(SMALL_RADICANDS), min_size=n, max_size=n, unique=True)))
    assume(is_primitive(entries))
    if imaginary is True:
        assume(any(a < 0 for a in entries))
    elif imaginary is False:
        assume(all(a > 0 for a in entries))
    return entries
