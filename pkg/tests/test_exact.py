from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlat import exact as ex
from hyperlat.exact import Gauss

from strategies import congruent, int_matrix, negdef_gram, unimodular


def test_gauss_arithmetic():
    a, b = Gauss(1, 2), Gauss(3, -1)
    assert a * b == Gauss(5, 5)
    assert a / b * b == a
    assert a.conjugate() == Gauss(1, -2)
    assert ex.is_unit(Gauss(0, -1))
    assert ex.divisible_by_one_plus_i(Gauss(2))
    assert not ex.divisible_by_one_plus_i(Gauss(1))


def test_gauss_gcd_divides_both():
    g = ex.gauss_gcd(Gauss(4, 2), Gauss(3, 1))
    for x in (Gauss(4, 2), Gauss(3, 1)):
        assert (x / g).is_integral()


def test_floats_rejected():
    with pytest.raises(TypeError):
        Gauss.coerce(1 + 2j)


@given(int_matrix)
def test_smith_normal_form_identity(m):
    m = ex.mat(m)
    u, d, v = ex.smith_normal_form(m)
    assert ex.mat_mul(ex.mat_mul(u, m), v) == d
    assert ex.det(u) in (1, -1) and ex.det(v) in (1, -1)
    diag = [d[i][i] for i in range(min(ex.dims(m)))]
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)


@given(int_matrix)
def test_integer_kernel_is_saturated_kernel(m):
    m = ex.mat(m)
    k = ex.integer_kernel(m)
    cols = ex.columns(k)
    for c in cols:
        assert all(x == 0 for x in ex.mat_vec(m, c))
    rank = len(m[0]) - len(cols)
    assert rank == sum(1 for x in ex.smith_diagonal(m) if x)


def test_inverse_and_det():
    a = ex.mat([[2, 1], [7, 4]])
    assert ex.det(a) == 1
    assert ex.mat_mul(a, ex.inverse(a)) == ex.identity(2)
    with pytest.raises(ex.LinAlgError):
        ex.inverse(ex.mat([[1, 2], [2, 4]]))


@settings(max_examples=60)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-3, 3).filter(bool), min_size=n, max_size=n), unimodular(n))))
def test_signature_invariant_under_congruence(data):
    diag, u = data
    g = ex.mat([[diag[i] if i == j else 0 for j in range(len(diag))] for i in range(len(diag))])
    expected = (sum(x > 0 for x in diag), sum(x < 0 for x in diag), 0)
    assert ex.signature(g) == expected
    assert ex.signature(congruent(g, u)) == expected


def test_signature_handles_zero_diagonal():
    assert ex.signature(ex.mat([[0, 1], [1, 0]])) == (1, 1, 0)
    assert ex.signature(ex.mat([[0, 0], [0, 0]])) == (0, 0, 2)


def _box(g, target, offset, bound):
    n = len(g)
    out = []
    for v in product(range(-bound, bound + 1), repeat=n):
        w = tuple(Fraction(a) + Fraction(b) for a, b in zip(v, offset))
        if ex.bilinear(g, w, w) == target:
            out.append(tuple(v))
    return sorted(out)


@settings(max_examples=40, deadline=None)
@given(negdef_gram(3), st.integers(-8, 0), st.sampled_from([(0, 0, 0), (Fraction(1, 2), 0, Fraction(1, 2))]))
def test_negdef_enumerate_matches_box(g, target, offset):
    offset = offset[:len(g)]
    got = sorted(map(tuple, ex.negdef_enumerate(g, target, offset)))
    # every solution has |v_i + offset_i| <= sqrt(-target) since -g >= identity
    assert got == _box(g, target, offset, 3 + 1)


@settings(max_examples=20, deadline=None)
@given(negdef_gram(4), st.integers(-6, -1))
def test_negdef_enumerate_rank4(g, target):
    got = sorted(map(tuple, ex.negdef_enumerate(g, target)))
    assert got == _box(g, target, (0,) * len(g), 3)


def test_negdef_rejects_indefinite():
    with pytest.raises(ex.LinAlgError):
        ex.negdef_enumerate(ex.mat([[1, 0], [0, -1]]), -1)


def test_short_vectors_a2():
    a2 = ex.mat([[-2, 1], [1, -2]])
    assert len(ex.short_vectors(a2, -2)) == 6


def test_hermite_of_kernel_is_canonical():
    m = ex.mat([[1, 1, 1]])
    k1 = ex.integer_kernel(m)
    u = ex.mat([[1, 1], [0, 1]])
    assert ex.column_hermite(ex.mat_mul(k1, u)) == k1
