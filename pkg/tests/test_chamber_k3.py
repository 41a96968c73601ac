from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from hyperlat import chamber, k3
from hyperlat import exact as ex
from hyperlat import zlattice as zl

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def _values(rep):
    return {name: v for name, _, v in rep.values}


def test_segment_example_values():
    rep = chamber.segment_inner_products(-1, -2)
    v = _values(rep)
    assert {v[n] for n in chamber.WHITE} == {1}
    assert {v[n] for n in chamber.GREY} == {2}
    assert {v[n] for n in chamber.TETRA} == {1}
    assert rep.in_segment and rep.case_split and rep.ratio_matches


def test_segment_endpoints():
    v = _values(chamber.segment_inner_products(-1, -1))
    assert all(v[n] == 0 for n in chamber.TETRA)
    v = _values(chamber.segment_inner_products(0, -1))
    assert all(v[n] == 0 for n in chamber.WHITE)


@given(rationals, rationals)
def test_case_split_holds_everywhere(a, b):
    rep = chamber.segment_inner_products(a, b)
    assert rep.case_split
    assert rep.fixed_by_symmetries
    assert rep.in_segment == (b <= a <= 0)
    if rep.distance_ratio:
        assert rep.ratio_matches


def test_segment_point_on_positive_side():
    lat = chamber.fixed_lattice()
    x = chamber.segment_point(Fraction(-1), Fraction(-2))
    assert lat.norm(x) > 0


def test_symmetry_generators():
    s, t = chamber.symmetry_generators()
    lat = chamber.fixed_lattice()
    for m in (s, t):
        assert ex.mat_mul(ex.mat_mul(ex.transpose(m), lat.gram), m) == lat.gram
    tetra = {chamber.C6_ROOTS[n] for n in chamber.TETRA}
    assert {ex.mat_vec(s, r) for r in tetra} == tetra


def test_k3_lattice_is_unimodular_even():
    lat = k3.k3_lattice()
    assert lat.rank == 22 and abs(lat.det) == 1 and lat.is_even
    assert lat.signature() == (3, 19)


def test_e8_involution_type():
    u = k3.e8_involution("A1 D4")
    e8 = k3.e8_gram()
    assert ex.mat_mul(u, u) == ex.identity(8)
    assert ex.mat_mul(ex.mat_mul(ex.transpose(u), e8), u) == e8
    minus = ex.integer_kernel(ex.mat_add(u, ex.identity(8)))
    assert len(minus[0]) == 5


def test_empty_real_locus_restrictions():
    res = k3.restrictions()
    inv = zl.two_elementary_invariants(res.fixed)
    assert (inv.r_plus + inv.r_minus, inv.a, inv.delta) == (10, 10, 0)
    assert str(zl.k3_real_topological_type(inv)) == "empty"
    assert zl.decide_isomorphic(res.minus_fixed, zl.build_z("U(2)+D4(2)+A1(2)")).isomorphic
    assert zl.decide_isomorphic(res.plus_fixed, zl.build_z("A1(2)^3")).isomorphic
