import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlat import exact as ex
from hyperlat import zlattice as zl

from strategies import congruent, unimodular

TWO_ELEMENTARY = ["(2)+A1^6", "(2)+A1^5", "U(2)+A1", "(2)+A1^7", "U+U(2)+D4^2+A1^2",
                  "U(2)+E8(2)", "U(2)+D4+A1"]


def test_build_z_expressions():
    lat = zl.build_z("(2)+A1^2+D4(2)")
    assert lat.rank == 7
    assert lat.signature() == (1, 6)
    assert abs(lat.det) == 2 ** 9
    assert zl.build_z("U").gram == ((0, 1), (1, 0))
    assert zl.build_z("E8").det == 1
    assert zl.build_z("A1(2)").gram == ((-4,),)
    assert zl.build_z("(2)⊕A₁²").rank == 3


def test_build_z_rejects_unknown():
    with pytest.raises(zl.LatticeError):
        zl.build_z("Q7")


def test_degenerate_gram_rejected():
    with pytest.raises(zl.LatticeError):
        zl.ZLattice(((1, 1), (1, 1)))


def test_discriminant_groups():
    assert zl.discriminant_group(zl.build_z("D4")) == [2, 2]
    assert zl.discriminant_group(zl.build_z("E8")) == []
    assert zl.discriminant_group(zl.build_z("A1(2)")) == [4]


def test_two_elementary_invariants_examples():
    inv = zl.two_elementary_invariants(zl.build_z("(2)+A1^7"))
    assert inv.as_tuple() == (1, 7, 8, 1)
    assert zl.two_elementary_invariants(zl.build_z("U(2)+E8(2)")).as_tuple() == (1, 9, 10, 0)
    for spec in ("D4^3+(2)^2", "U(2)^2+D8+A1^2", "U+U(2)+D4^2+A1^2"):
        assert zl.two_elementary_invariants(zl.build_z(spec)).as_tuple() == (2, 12, 8, 1)


def test_two_elementary_errors():
    with pytest.raises(zl.NotTwoElementary):
        zl.two_elementary_invariants(zl.build_z("A2"))
    with pytest.raises(zl.NotEven):
        zl.two_elementary_invariants(zl.build_z("(1)+(-1)"))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(TWO_ELEMENTARY).flatmap(
    lambda s: st.tuples(st.just(s), unimodular(zl.build_z(s).rank))))
def test_nikulin_invariants_under_unimodular_congruence(data):
    spec, u = data
    lat = zl.build_z(spec)
    moved = zl.ZLattice(congruent(lat.gram, u))
    assert zl.two_elementary_invariants(moved) == zl.two_elementary_invariants(lat)
    assert zl.discriminant_form_counts(moved) == zl.discriminant_form_counts(lat)
    assert zl.summarize(moved) == zl.summarize(lat)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["(2)+A1^2", "(4)+A1", "(2)+A1(2)+A1"]).flatmap(
    lambda s: st.tuples(st.just(s), unimodular(zl.build_z(s).rank))))
def test_decide_isomorphic_recognises_congruent_copies(data):
    spec, u = data
    lat = zl.build_z(spec)
    verdict = zl.decide_isomorphic(lat, zl.ZLattice(congruent(lat.gram, u)))
    assert verdict.isomorphic
    if verdict.witness is not None:
        assert zl.verify_base_change(congruent(lat.gram, u), verdict.witness, lat.gram) or \
            zl.verify_base_change(lat.gram, verdict.witness, congruent(lat.gram, u))


def test_decide_isomorphic_distinguishers():
    v = zl.decide_isomorphic(zl.build_z("(2)+A1^2"), zl.build_z("(2)+A1+A1(2)"))
    assert v.distinct and v.invariant == "|det|"
    v = zl.decide_isomorphic(zl.build_z("(2)+A1^4+A1(2)^2"), zl.build_z("(2)+A1^2+D4(2)"))
    assert v.distinct and v.invariant == "discriminant form"
    v = zl.decide_isomorphic(zl.build_z("(2)+A1^3+A1(2)^3"), zl.build_z("U(2)+A1(2)+D4(2)"))
    assert v.distinct and "half-scale" in v.invariant


def test_decide_isomorphic_definite_search():
    d4 = zl.build_z("D4")
    other = zl.ZLattice(congruent(d4.gram, ((1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 1, 1))))
    v = zl.decide_isomorphic(d4, other)
    assert v.isomorphic and v.witness is not None
    assert not zl.decide_isomorphic(zl.build_z("A1^4"), zl.build_z("A2+A1^2")).isomorphic


def test_verify_base_change_printed_identity():
    assert zl.verify_base_change(zl.build_z("(4)+A1").gram, ((1, -1), (-1, 2)),
                                 zl.build_z("(2)+A1(2)").gram)
    assert not zl.verify_base_change(zl.build_z("(4)+A1").gram, ((1, 0), (0, 2)),
                                     zl.build_z("(2)+A1(2)").gram)
    with pytest.raises(zl.LatticeError):
        zl.verify_base_change(((1,),), ((1, 0), (0, 1)), ((1,),))


def test_split_certificate():
    left, right = zl.build_z("U(2)+A1"), zl.build_z("(2)+A1^2")
    b = zl.split_certificate(right, left, 20)
    assert b is not None and zl.verify_base_change(left.gram, b, right.gram)


@pytest.mark.parametrize("spec", ["(2)+A1^6", "U(2)+A1", "A1^3+(-2)+U(2)", "E8+U"])
def test_positive_vector(spec):
    lat = zl.build_z(spec)
    v = zl.positive_vector(lat)
    assert lat.norm(v) > 0 and ex.vec_gcd(v) == 1


def test_positive_vector_none_for_definite():
    assert zl.positive_vector(zl.build_z("A2")) is None


def test_k3_topology():
    def top(r_plus, r_minus, a, delta):
        return str(zl.k3_real_topological_type(zl.TwoElemInvariants(r_plus, r_minus, a, delta)))
    assert top(1, 9, 10, 0) == "empty"
    assert top(1, 9, 8, 0) == "2S1"
    assert top(1, 0, 1, 1) == "S10 + 0S0"
    assert top(1, 19, 2, 1) == "S0 + 9S0"
    with pytest.raises(zl.LatticeError):
        top(2, 8, 2, 1)


def test_reflection_preserves_form():
    lat = zl.build_z("(2)+A1^2+D4(2)")
    r = (0, 0, 0, 1, 0, 0, 0)
    s = lat.reflection(r)
    assert congruent(lat.gram, s) == lat.gram
    assert ex.mat_vec(s, r) == tuple(-x for x in r)


def test_summary_dict_is_json_ready():
    import json
    json.dumps(zl.summarize(zl.build_z("(2)+A1^2+D4(2)")).as_dict())
