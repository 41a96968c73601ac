import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlat import chamber
from hyperlat import exact as ex
from hyperlat import zlattice as zl
from hyperlat.coxeter import diagram as dg
from hyperlat.coxeter import f2
from hyperlat.coxeter import richardson as rc


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "A4", "D4", "F4", "D5"])
def test_richardson_matches_enumeration(name):
    sys = rc.named_system(name)
    assert len(rc.involution_classes(sys)) == rc.brute_force_class_count(sys)


def test_class_members_partition_minus_one_subsets():
    sys = rc.named_system("E7")
    classes = rc.involution_classes(sys)
    members = [s for c in classes for s in c.members]
    assert sorted(members) == sorted(rc.minus_one_subsets(sys))
    assert len(set(members)) == len(members)


def test_e7_names_and_opposites():
    sys = rc.named_system("E7")
    classes = rc.involution_classes(sys)
    names = rc.class_names(sys, classes)
    assert len(classes) == 10
    a = rc.class_containing(classes, (1, 3, 6))
    b = rc.class_containing(classes, (3, 5, 6))
    assert (names[a.representative], names[b.representative]) == ("A1^3", "A1^3'")
    top = rc.class_containing(classes, tuple(range(7)))
    assert names[rc.opposite_class(sys, classes, top).representative] == "1"


def test_infinite_dihedral_reflections_not_conjugate():
    sys = rc.CoxeterSystem(((1, rc.INF), (rc.INF, 1)))
    assert [c.type_name for c in rc.involution_classes(sys)] == ["1", "A1", "A1"]


def test_noncrystallographic_types():
    assert rc.subset_type_name(rc.named_system("H3"), (0, 1, 2)) == "H3"
    assert len(rc.involution_classes(rc.named_system("I2(5)"))) == 2
    assert len(rc.involution_classes(rc.named_system("H3"))) == 4


def test_invalid_coxeter_matrix():
    with pytest.raises(ValueError):
        rc.CoxeterSystem(((1, 3), (2, 1)))


def test_longest_element_is_minus_one_on_e7():
    rep = rc.GeometricRep(rc.named_system("E7"))
    assert rep.longest_element(tuple(range(7))) == ex.mat_scale(-1, ex.identity(7))


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 4), st.lists(st.integers(0, 6), max_size=8))
def test_f2_label_invariant_under_conjugation(k, word):
    cls = f2.e7_classifier()
    pair, w = cls.pairs[k]
    g = w
    for i in word:
        s = cls.gens[i]
        g = f2.compose_bits(s, f2.compose_bits(g, s))
    assert cls.classify(g).pair == pair
    assert f2.fixed_dimension(g) == f2.fixed_dimension(w)


def test_f2_rejects_form_breaking_matrix():
    bad = (0b11,) + tuple(1 << j for j in range(1, 7))  # e0 -> e0 + e1 on all of V
    with pytest.raises(f2.FormNotPreserved):
        f2.e7_classifier().classify(bad)


def test_bits_roundtrip():
    m = ((1, 0, 1), (0, 1, 1), (0, 0, 1))
    assert f2.from_bits(f2.to_bits(m), 3) == m


@pytest.mark.parametrize("name,order", [("A2", 6), ("A3", 24), ("B3", 24), ("D4", 96)])
def test_group_order_mod2(name, order):
    # -1 lies in W(B3) and W(D4) and acts trivially mod 2
    gens = f2.simple_reflections_mod2(rc.GeometricRep(rc.named_system(name)))
    assert f2.group_order_mod2(gens) == order


def _random_multigraph(rng, n):
    norms = tuple(rng.choice([-2, -4]) for _ in range(n))
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                edges[(i, j)] = rng.choice([3, 4, 6, "inf", "ultra"])
    return norms, edges


def _relabel(graph, perm):
    norms, edges = graph
    new_norms = [None] * len(norms)
    for i, p in enumerate(perm):
        new_norms[p] = norms[i]
    new_edges = {tuple(sorted((perm[i], perm[j]))): v for (i, j), v in edges.items()}
    return tuple(new_norms), new_edges


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 10), st.randoms(use_true_random=False))
def test_multigraph_isomorphism_finds_relabelings(n, rng):
    g = _random_multigraph(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    h = _relabel(g, perm)
    found = dg.multigraph_isomorphism(g, h)
    assert found is not None
    assert _relabel(g, found) == (h[0], h[1])


def test_multigraph_isomorphism_detects_label_change():
    g = ((-2, -2, -4), {(0, 1): 3, (1, 2): 4})
    assert dg.multigraph_isomorphism(g, ((-2, -2, -4), {(0, 1): 3, (1, 2): 6})) is None
    assert dg.multigraph_isomorphism(g, ((-2, -4, -2), {(0, 1): 4, (0, 2): 3})) is not None


def _c6_diagram():
    lat = chamber.fixed_lattice()
    roots = list(chamber.C6_ROOTS.values())
    gram = tuple(tuple(lat.ip(a, b) for b in roots) for a in roots)
    return dg.CoxeterDiagram(gram, tuple(chamber.C6_ROOTS))


def test_c6_render_dot():
    dot = dg.render(_c6_diagram(), "dot")
    assert dot.startswith("graph coxeter {")
    assert sum(1 for line in dot.splitlines() if "[label=" in line) == 13
    assert dot.count('class="halved"') == 4
    assert dot.count('class="plain"') == 9


def test_c6_render_ascii_and_bad_format():
    text = dg.render(_c6_diagram(), "ascii")
    assert "r13 [-4] halved" in text
    with pytest.raises(ValueError):
        dg.render(_c6_diagram(), "svg")


def test_c6_automorphisms():
    d = _c6_diagram()
    order, gens, elements = dg.diagram_automorphisms(d)
    assert order == 24 and dg.is_s4(elements, d.size)
    assert dg.finite_volume(d, 6).finite


def test_finite_volume_rejects_partial_chamber():
    d = _c6_diagram().sub(range(12))
    assert not dg.finite_volume(d, 6).finite


def test_edge_classification():
    assert dg.classify_edge(1, -2, -2).label() == 3
    assert dg.classify_edge(2, -4, -2).label() == 4
    assert dg.classify_edge(2, -2, -2).label() == "inf"
    assert dg.classify_edge(3, -2, -2).label() == "ultra"
    with pytest.raises(dg.NonCrystallographicAngle):
        dg.classify_edge(1, -4, -2)


def test_subdiagram_types():
    d = dg.diagram_from_roots(zl.build_z("E8").gram)
    assert dg.type_name(d, range(8)) == "E8"
    affine = dg.diagram_from_roots(ex.mat([[-2, 2], [2, -2]]))
    assert dg.classify_subdiagram(affine, (0, 1)).kind == "parabolic"


def test_named_system_e7_shape():
    sys = rc.named_system("E7")
    degrees = sorted(len(v) for v in sys.adjacency(tuple(range(7))).values())
    assert degrees == [1, 1, 1, 2, 2, 2, 3]
    with pytest.raises(Exception):
        rc.named_system("X3")
