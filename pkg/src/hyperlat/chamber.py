"""The chamber C6 of the maximal real component: its 13 roots, the S4
symmetry generators and the S4-fixed segment."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact as ex
from . import gaussian as ga
from . import zlattice as zl

C6_ROOTS = {
    "r1": (0, 1, -1, 0, 0, 0, 0),
    "r2": (0, 0, 1, 0, 0, 0, 0),
    "r3": (0, 0, 0, 1, -1, 0, 0),
    "r4": (0, 0, 0, 0, 1, 0, 0),
    "r5": (0, 0, 0, 0, 0, 1, -1),
    "r6": (0, 0, 0, 0, 0, 0, 1),
    "r7": (1, -1, 0, -1, 0, 0, 0),
    "r8": (1, -1, 0, 0, 0, -1, 0),
    "r9": (1, 0, 0, -1, 0, -1, 0),
    "r10": (1, -1, -1, 0, 0, 0, 0),
    "r11": (1, 0, 0, -1, -1, 0, 0),
    "r12": (1, 0, 0, 0, 0, -1, -1),
    "r13": (2, -1, -1, -1, -1, -1, -1),
}

# S4-orbits of walls: white (norm -2), grey (norm -2), tetrahedral (norm -4)
WHITE = ("r2", "r4", "r6", "r7", "r8", "r9")
GREY = ("r10", "r11", "r12")
TETRA = ("r1", "r3", "r5", "r13")
HYPERELLIPTIC_WALL = ("r1", "r2", "r3", "r5", "r6", "r7", "r9", "r13")
CONTROLLER = (1, 0, 0, 0, 0, 0, 0)


def host() -> ga.GaussianLattice:
    return ga.build_gaussian("L1,6")


def fixed_lattice() -> zl.ZLattice:
    """Lambda_{1,6}^{chi1} in the basis given by the columns of B_CHI1."""
    return zl.ZLattice(ga.hermitian_to_real_gram(host(), ga.B_CHI1), "(2)+A1^6")


def _e(*terms) -> tuple:
    v = [0] * 7
    for index, sign in terms:
        v[index] += sign
    return tuple(v)


def symmetry_generators() -> tuple:
    """(s, t): products of reflections realising an order 3 rotation and an
    order 2 reflection of the tetrahedron r1, r3, r5, r13."""
    lat = fixed_lattice()
    refl = lat.reflection
    s = ex.mat_mul(
        ex.mat_mul(refl(_e((4, 1), (6, -1))), refl(_e((3, 1), (5, -1)))),
        ex.mat_mul(refl(_e((1, 1), (3, -1))), refl(_e((2, 1), (4, -1)))),
    )
    t = ex.mat_mul(refl(_e((0, 1), (1, -1), (3, -1), (4, -1))),
                   refl(_e((0, 1), (1, -1), (5, -1), (6, -1))))
    return s, t


def segment_point(a, b) -> tuple:
    a, b = Fraction(a), Fraction(b)
    return (-2 * b - a, b, a, b, a, b, a)


@dataclass(frozen=True)
class SegmentReport:
    point: tuple
    values: tuple  # (name, root, (x, r) in the half-scaled form)
    in_segment: bool  # b <= a <= 0
    case_split: bool
    distance_ratio: tuple  # sinh^2 d for white, grey, tetrahedral walls (projective)
    ratio_matches: bool
    fixed_by_symmetries: bool


def segment_inner_products(a, b) -> SegmentReport:
    """Inner products of x = (-2b-a, b, a, b, a, b, a) with the 13 roots.

    Values are reported for the half-scaled form (Gram diag(1, -1, ..., -1)),
    where the case split reads -a (white), -b (grey), a-b (tetrahedral).
    """
    a, b = Fraction(a), Fraction(b)
    lat = fixed_lattice()
    x = segment_point(a, b)
    values = tuple((name, r, lat.ip(x, r) / 2) for name, r in C6_ROOTS.items())
    expected = {**{n: -a for n in WHITE}, **{n: -b for n in GREY}, **{n: a - b for n in TETRA}}
    case_split = all(v == expected[name] for name, _, v in values)
    xx = lat.norm(x)
    ratio = ()
    ratio_ok = False
    if xx > 0:
        # sinh^2 d(x, H_r) = (x, r)^2 / ((x, x) |(r, r)|)
        def sinh2(name):
            r = C6_ROOTS[name]
            return Fraction(lat.ip(x, r) ** 2, 1) / (xx * -lat.norm(r))

        ratio = (sinh2("r2"), sinh2("r10"), sinh2("r1"))
        target = (a * a, b * b, (a - b) ** 2 / 2)
        ratio_ok = all(ratio[i] * target[j] == ratio[j] * target[i]
                       for i in range(3) for j in range(3))
    s, t = symmetry_generators()
    fixed = ex.mat_vec(s, x) == x and ex.mat_vec(t, x) == x
    return SegmentReport(x, values, b <= a <= 0, case_split, ratio, ratio_ok, fixed)
