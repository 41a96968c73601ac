from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlat import vinberg as vb
from hyperlat import zlattice as zl


def _run(spec, **kw):
    lat = zl.build_z(spec)
    return vb.run_vinberg(vb.VinbergConfig(lat, (1,) + (0,) * (lat.rank - 1), **kw))


def test_simplex_for_n2():
    run = _run("(2)+A1^2")
    assert run.status == vb.FINISHED
    assert run.roots == [(0, 1, -1), (0, 0, 1), (1, -1, -1)]
    assert run.heights == [0, 0, 2]
    assert run.prose_heights == [0, 0, 4]
    assert run.census.cusp_types() == ["A1~"]


def test_simplex_for_n9_has_two_cusps():
    run = _run("(2)+A1^9")
    assert run.status == vb.FINISHED and len(run.roots) == 10
    assert run.census.cusp_types() == ["B8~", "E8~"]


def test_default_norms():
    assert vb.default_allowed_norms(zl.build_z("(2)+A1^3")) == [2, 4]
    assert vb.default_allowed_norms(zl.build_z("U+A1(2)")) == [2, 4, 8]
    with pytest.raises(vb.VinbergError):
        vb.default_allowed_norms(zl.build_z("(1)+(-1)+(-1)"))


def test_crystallographic_check():
    lat = zl.build_z("(2)+A1^3")
    assert vb.crystallographic_check(lat, (1, -1, -1, 0))
    assert vb.crystallographic_check(lat, (1, -1, -1, -1))
    assert not vb.crystallographic_check(lat, (1, -2, 0, 0))  # norm -6, 2 (r, e0) = 4
    with pytest.raises(vb.VinbergError):
        vb.crystallographic_check(lat, (2, 0, 0, 0))


def test_config_validation():
    lat = zl.build_z("(2)+A1^3")
    with pytest.raises(vb.VinbergError):
        vb.VinbergConfig(lat, (0, 1, 0, 0))
    with pytest.raises(vb.VinbergError):
        vb.VinbergConfig(lat, (1, 0, 0, 0), allowed_norms=(3,))
    with pytest.raises(vb.VinbergError):
        vb.run_vinberg(vb.VinbergConfig(zl.build_z("(2)+A1"), (1, 0)))


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 6), st.fractions(min_value=0, max_value=2, max_denominator=4))
def test_height_cap_gives_prefix(n, cap):
    full = _run(f"(2)+A1^{n}")
    capped = _run(f"(2)+A1^{n}", max_height=cap)
    k = len(capped.roots)
    assert capped.roots == full.roots[:k]
    assert all(h <= cap for h in capped.heights)
    if capped.status == vb.HEIGHT_CAPPED:
        assert k < len(full.roots)


@pytest.mark.parametrize("n", range(2, 8))
def test_roots_nonobtuse_and_heights_sorted(n):
    run = _run(f"(2)+A1^{n}")
    lat = run.config.lattice
    for i, a in enumerate(run.roots):
        for b in run.roots[i + 1:]:
            assert lat.ip(a, b) >= 0
    assert run.heights == sorted(run.heights)
    for r, h in zip(run.roots, run.heights):
        assert h == Fraction(lat.ip(r, run.config.controller) ** 2, -lat.norm(r))


def test_predicate_filters_roots():
    run = _run("(2)+A1^3", predicate=lambda r: lat_norm(r) == -2)
    assert all(lat_norm(r) == -2 for r in run.roots)


def lat_norm(r):
    return zl.build_z("(2)+A1^3").norm(r)
