"""Hypothesis strategies for ring elements."""
from hypothesis import strategies as st

from novikov import IntLaurentPoly, RationalR

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def laurent_polys(draw, max_terms=4, low=-2, high=3):
    exps = draw(st.lists(st.integers(low, high), max_size=max_terms, unique=True))
    return IntLaurentPoly({e: draw(small_ints.filter(bool)) for e in exps})


@st.composite
def denominators(draw, max_degree=3):
    """Polynomials in 1 + zZ[z]."""
    tail = draw(st.lists(st.integers(-3, 3), max_size=max_degree))
    return IntLaurentPoly.from_poly([1] + tail)


@st.composite
def r_elements(draw, nonzero=False):
    num = draw(laurent_polys())
    if nonzero and not num:
        num = IntLaurentPoly({draw(st.integers(-2, 2)): draw(small_ints.filter(bool))})
    return RationalR(num, draw(denominators()))


