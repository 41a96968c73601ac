import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlat import chamber
from hyperlat import exact as ex
from hyperlat import gaussian as ga
from hyperlat import zlattice as zl
from hyperlat.exact import Gauss

HOST = ga.build_gaussian("L1,6")
CHIS = [f"chi{j}" for j in range(1, 7)]
# Gaussian roots attached to the 13 walls of the chamber
ROOTS = [ga.gaussian_root_from_real(HOST, ga.B_CHI1, r) for r in chamber.C6_ROOTS.values()]
TETRA = [ga.tetraflection(HOST, r) for r in ROOTS]


def _word(indices):
    g = ex.identity(7, Gauss(1))
    for k in indices:
        g = ex.mat_mul(g, TETRA[k])
    return ga.gmat(g)


words = st.lists(st.integers(0, len(ROOTS) - 1), max_size=5)


def test_named_lattices():
    assert ga.build_gaussian("L2").rank == 2
    assert HOST.rank == 7
    re = ga.realify(HOST).zlat
    assert re.signature() == (2, 12)


def test_hermitian_form_requires_one_plus_i():
    with pytest.raises(ga.ValidationFailed):
        ga.GaussianLattice(ga.gmat([[1]]))
    with pytest.raises(ga.ValidationFailed):
        ga.GaussianLattice(ga.gmat([[2, (0, 1)], [(0, 1), 2]]))


def test_lambda2_roots_and_group():
    lat = ga.build_gaussian("L2")
    assert len(ga.projective_roots(lat)) == 6
    order, gens = ga.tetraflection_group(lat)
    assert order == 96 and len(gens) == 6


def test_closure_cap_from_environment(monkeypatch):
    monkeypatch.setenv("HYPERLAT_MAX_CLOSURE", "10")
    with pytest.raises(ga.ClosureCapExceeded):
        ga.tetraflection_group(ga.build_gaussian("L2"))


@settings(max_examples=25, deadline=None)
@given(words, st.integers(0, len(ROOTS) - 1))
def test_tetraflection_of_any_image_root(word, k):
    g = _word(word)
    r = ex.mat_vec(g, ROOTS[k])
    assert HOST.h(r, r) == -2
    t = ga.tetraflection(HOST, r)
    assert ga.is_unitary(HOST, t)
    assert ex.is_integral_matrix(t)
    assert ex.mat_vec(t, r) == tuple(ga.I * x for x in r)
    assert ex.mat_pow(t, 4) == ex.identity(7, Gauss(1))
    real = ga.realify(HOST)
    tr = ga.realify_matrix(t)
    assert ex.mat_mul(ex.mat_mul(ex.transpose(tr), real.zlat.gram), tr) == real.zlat.gram


@pytest.mark.parametrize("name", CHIS + ["i" + c for c in CHIS])
def test_involutions_anticommute_with_i(name):
    chi = ga.make_involution(HOST, name)
    x = chi.real_matrix()
    rho = ga.realify(HOST).rho
    assert ex.mat_mul(x, rho) == ex.mat_scale(-1, ex.mat_mul(rho, x))
    assert ex.mat_mul(x, x) == ex.identity(14)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(CHIS), words)
def test_conjugate_involution_has_isomorphic_fixed_lattice(name, word):
    chi = ga.make_involution(HOST, name)
    g = _word(word)
    # g chi g^-1 = (g M conj(g)^-1) conj
    m = ex.mat_mul(ex.mat_mul(g, chi.M), ex.inverse(ex.mat_conj(g)))
    conj = ga.make_involution(HOST, ga.gmat(m))
    rho = ga.realify(HOST).rho
    assert ex.mat_mul(conj.real_matrix(), rho) == ex.mat_scale(-1, ex.mat_mul(rho, conj.real_matrix()))
    a = zl.summarize(ga.fixed_lattice(chi).zlat)
    b = zl.summarize(ga.fixed_lattice(conj).zlat)
    assert a == b
    assert ga.reduce_mod_one_plus_i(HOST, conj).fixed_dim == ga.reduce_mod_one_plus_i(HOST, chi).fixed_dim


def test_involution_validation():
    with pytest.raises(ga.ValidationFailed):
        ga.make_involution(HOST, "psi1")  # wrong size
    with pytest.raises(ga.ValidationFailed):
        ga.make_involution(ga.build_gaussian("L2"), ga.gmat([[1, 1], [0, 1]]))
    with pytest.raises(ga.ValidationFailed):
        ga.make_involution(HOST, "psi9")


def test_fixed_basis_check_rejects_partial_basis():
    chi = ga.make_involution(ga.build_gaussian("L2"), "psi2")
    assert ga.fixed_basis_check(chi, ga.gmat([[(1, 1), 0], [1, 1]]))
    assert not ga.fixed_basis_check(chi, ga.gmat([[(2, 2), 0], [2, 1]]))


@pytest.mark.parametrize("name,dim", [("chi1", 7), ("chi2", 6), ("chi3", 5), ("chi4", 4),
                                      ("chi5", 5), ("chi6", 5)])
def test_reduction_fixed_dimension(name, dim):
    chi = ga.make_involution(HOST, name)
    assert ga.reduce_mod_one_plus_i(HOST, chi).fixed_dim == dim
    # conjugation is trivial mod 1+i, so i*chi has the same reduction
    assert ga.reduce_mod_one_plus_i(HOST, chi.times_i()).matrix == ga.reduce_mod_one_plus_i(HOST, chi).matrix


def test_in_basis_roundtrip():
    chi = ga.make_involution(HOST, "chi3")
    m = ga.in_basis(ga.B_E7, chi.M, antilinear=True)
    back = ga.in_basis(ex.inverse(ga.B_E7), m, antilinear=True)
    assert back == chi.M


@pytest.mark.parametrize("name,kind", [("r2", "nodal"), ("r10", "hyperelliptic"), ("r13", "nodal")])
def test_mirror_types(name, kind):
    z = ga.gaussian_root_from_real(HOST, ga.B_CHI1, chamber.C6_ROOTS[name])
    assert ga.mirror_orthocomplement(HOST, z)[1] == kind


def test_mirror_rejects_non_roots():
    with pytest.raises(ga.NotARoot):
        ga.mirror_orthocomplement(HOST, (2, 0, 0, 0, 0, 0, 0))


def test_predicate_and_extension():
    pred = ga.gaussian_root_predicate(HOST, ga.B_CHI1)
    assert all(pred(r) for r in chamber.C6_ROOTS.values())
    chi = ga.make_involution(HOST, "chi1")
    fixed = chamber.fixed_lattice()
    for r in chamber.C6_ROOTS.values():
        assert ga.extends_to_gaussian(HOST, chi, ga.B_CHI1, fixed.reflection(r))
    with pytest.raises(ga.ValidationFailed):
        ga.extends_to_gaussian(HOST, chi, ga.B_CHI1, ex.mat_scale(2, ex.identity(7)))
