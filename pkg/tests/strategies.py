"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from hyperlat import exact as ex


@st.composite
def unimodular(draw, n: int, steps: int = 6):
    """Product of random elementary integer matrices and sign flips."""
    m = [list(r) for r in ex.identity(n)]
    for _ in range(draw(st.integers(0, steps))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        if i == j:
            m[i] = [-x for x in m[i]]
            continue
        f = draw(st.integers(-2, 2))
        m[i] = [a + f * b for a, b in zip(m[i], m[j])]
    return tuple(tuple(r) for r in m)


def congruent(g, u):
    return ex.mat_mul(ex.mat_mul(ex.transpose(u), g), u)


@st.composite
def negdef_gram(draw, max_rank: int = 4):
    """Negative definite Gram: -(A^t A + D) with small entries."""
    n = draw(st.integers(1, max_rank))
    a = [[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(n)]
    d = [draw(st.integers(1, 3)) for _ in range(n)]
    g = [[-(sum(a[k][i] * a[k][j] for k in range(n)) + (d[i] if i == j else 0)) for j in range(n)]
         for i in range(n)]
    return tuple(tuple(r) for r in g)


int_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                           min_size=r, max_size=r)))
