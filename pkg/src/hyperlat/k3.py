"""The K3 lattice U^3 + E8^2 with the involutions used to pin down the
empty real component."""

from __future__ import annotations

from dataclasses import dataclass

from . import exact as ex
from . import zlattice as zl
from .coxeter.richardson import GeometricRep, involution_classes, named_system


def e8_involution(subset_type: str = "A1 D4") -> tuple:
    """Longest element w_I of E8 for the first (-1) subset of the given type,
    in the simple-root basis (an isometry of E8)."""
    sys = named_system("E8")
    for cls in involution_classes(sys):
        if cls.type_name == subset_type:
            return GeometricRep(sys).longest_element(cls.representative)
    raise KeyError(f"no involution of type {subset_type} in W(E8)")


def e8_gram() -> tuple:
    rep = GeometricRep(named_system("E8"))
    return tuple(tuple(-int(x) for x in row) for row in rep.form)


def k3_lattice() -> zl.ZLattice:
    u = zl.U_GRAM
    e8 = e8_gram()
    return zl.ZLattice(ex.block_diag(u, u, u, e8, e8), "U^3+E8^2")


def _swap(k: int) -> tuple:
    zero, one = ex.zeros(k, k), ex.identity(k)
    top = tuple(a + b for a, b in zip(zero, one))
    bottom = tuple(a + b for a, b in zip(one, zero))
    return top + bottom


def tau() -> tuple:
    """-I2 + (-swap(U, U)) + u + u with u of type A1 D4.

    The sign on the swap block puts the diagonal U(2) into L_-, where the
    chi-fixed part must be hyperbolic; with +swap it would land in L_+.
    """
    u = e8_involution("A1 D4")
    minus = ex.mat_scale(-1, ex.identity(2))
    return ex.block_diag(minus, ex.mat_scale(-1, _swap(2)), u, u)


def empty_involution() -> tuple:
    """-I2 + swap(U, U) + swap(E8, E8)."""
    return ex.block_diag(ex.mat_scale(-1, ex.identity(2)), _swap(2), _swap(8))


@dataclass(frozen=True)
class K3Restrictions:
    fixed: zl.ZLattice
    minus: zl.ZLattice  # L_- = (-1)-eigenlattice of tau
    plus: zl.ZLattice
    minus_fixed: zl.ZLattice  # fixed lattice of chi on L_-
    plus_fixed: zl.ZLattice


def restrictions() -> K3Restrictions:
    lat = k3_lattice()
    t, chi = tau(), empty_involution()
    n = lat.rank
    for m in (t, chi):
        if ex.mat_mul(m, m) != ex.identity(n):
            raise ValueError("not an involution")
        if ex.mat_mul(ex.mat_mul(ex.transpose(m), lat.gram), m) != lat.gram:
            raise ValueError("not an isometry of the K3 lattice")
    if ex.mat_mul(t, chi) != ex.mat_mul(chi, t):
        raise ValueError("involutions do not commute")
    minus_basis = ex.integer_kernel(ex.mat_add(t, ex.identity(n)))
    plus_basis = ex.integer_fixed_sublattice(t)
    fixed_basis = ex.integer_fixed_sublattice(chi)

    def restricted_fixed(basis):
        # fixed vectors of chi inside the sublattice spanned by ``basis``
        both = ex.integer_kernel(ex.mat_sub(ex.mat_mul(chi, basis), basis))
        return lat.sublattice(ex.mat_mul(basis, both)) if both and len(both[0]) else None

    return K3Restrictions(
        fixed=lat.sublattice(fixed_basis),
        minus=lat.sublattice(minus_basis),
        plus=lat.sublattice(plus_basis),
        minus_fixed=restricted_fixed(minus_basis),
        plus_fixed=restricted_fixed(plus_basis),
    )
