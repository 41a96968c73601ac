"""Lattices over the Gaussian integers and their antiunitary involutions.

A Gaussian lattice is stored by its Hermitian Gram matrix H, with
h(x, y) = conj(x)^t H y.  The realification uses the Z-basis
(e_1..e_n, i e_1..i e_n); a Gaussian vector a + ib corresponds to the
integer vector (a, b).
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from . import exact as ex
from . import zlattice as zl
from .exact import Gauss, I, ONE_PLUS_I

DEFAULT_CLOSURE_CAP = 10 ** 6


class ValidationFailed(ValueError):
    pass


class NotARoot(ValueError):
    pass


class ClosureCapExceeded(RuntimeError):
    pass


class UnrecognizedOrbit(ValueError):
    pass


def G(re, im=0) -> Gauss:
    return Gauss(re, im)


def gmat(rows) -> tuple:
    """Gaussian matrix from rows of ints, Gauss values or [re, im] pairs."""
    return tuple(tuple(Gauss.coerce(x) for x in r) for r in rows)


def gvec(v) -> tuple:
    return tuple(Gauss.coerce(x) for x in v)


def closure_cap() -> int:
    return int(os.environ.get("HYPERLAT_MAX_CLOSURE", DEFAULT_CLOSURE_CAP))


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class GaussianLattice:
    hgram: tuple
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        h = gmat(self.hgram)
        object.__setattr__(self, "hgram", h)
        if not all(x.is_integral() for r in h for x in r):
            raise ValidationFailed("Hermitian Gram must have Gaussian integer entries")
        if not ex.is_hermitian(h):
            raise ValidationFailed("Gram matrix is not Hermitian")
        if not all(ex.divisible_by_one_plus_i(x) for r in h for x in r):
            raise ValidationFailed("Gram entries must be divisible by 1+i")
        if ex.det(h) == 0:
            raise ValidationFailed("Hermitian form is degenerate")

    @property
    def rank(self) -> int:
        return len(self.hgram)

    def h(self, x, y) -> Gauss:
        x, y = gvec(x), gvec(y)
        hy = ex.mat_vec(self.hgram, y)
        return sum((xi.conjugate() * v for xi, v in zip(x, hy)), Gauss(0))

    def __add__(self, other: "GaussianLattice") -> "GaussianLattice":
        name = f"{self.name}+{other.name}" if self.name and other.name else None
        return GaussianLattice(gaussian_block_diag(self.hgram, other.hgram), name)

    def is_integral_vector(self, v) -> bool:
        return all(Gauss.coerce(x).is_integral() for x in v)

    def in_dual(self, v) -> bool:
        """v (rational coordinates) lies in the dual lattice iff H v is integral."""
        return all(x.is_integral() for x in ex.mat_vec(self.hgram, gvec(v)))


def gaussian_block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    rows, off = [], 0
    zero = Gauss(0)
    for b in blocks:
        k = len(b)
        for r in b:
            rows.append((zero,) * off + tuple(Gauss.coerce(x) for x in r) + (zero,) * (n - off - k))
        off += k
    return tuple(rows)


LAMBDA2 = gmat([[-2, (1, 1)], [(1, -1), -2]])
LAMBDA11 = gmat([[0, (1, 1)], [(1, -1), 0]])

# basis of the rank-7 lattice adapted to the E7 diagram (columns)
B_E7 = gmat([
    [1, (-1, -1), 0, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, 0, 0],
    [0, (-1, -1), 1, (-1, -1), 0, 0, 0],
    [0, -1, 0, -1, 0, 0, 1],
    [0, 0, 0, (-1, -1), 1, 0, 0],
    [0, 0, 0, -1, 0, 1, 0],
    [0, 1, 0, 1, 0, 0, 0],
])

# basis (columns e0..e6) of the fixed lattice of chi1 inside Lambda_{1,6}
B_CHI1 = gmat([
    [0, (1, 1), 0, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, (1, 1), 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, (1, 1), 0],
    [0, 0, 0, 0, 0, 1, 1],
    [1, 0, 0, 0, 0, 0, 0],
])

_GTERM = re.compile(r"^(?:\((?P<q>-?\d+)\)|(?P<name>[A-Za-z0-9,]+))(?:\^(?P<pow>\d+))?$")


def _named_gaussian(name: str):
    key = name.replace(",", "").replace("Lambda", "L").replace("Λ", "L").upper()
    two = gmat([[2]])
    table = {
        "L2": [LAMBDA2],
        "L11": [LAMBDA11],
        "L12": [LAMBDA2, two],
        "L15": [LAMBDA2, LAMBDA2, LAMBDA11],
        "L16": [LAMBDA2, LAMBDA2, LAMBDA2, two],
    }
    if key in table:
        return gaussian_block_diag(*table[key])
    if key == "L16E7":
        h = gaussian_block_diag(*table["L16"])
        return ex.mat_mul(ex.mat_mul(ex.conj_transpose(B_E7), h), B_E7)
    raise ValidationFailed(f"unknown Gaussian lattice {name!r}")


def build_gaussian(spec) -> GaussianLattice:
    """Gaussian lattice from a name (``L2``, ``L1,1``, ``L1,6``, ``L1,6E7``),
    a sum such as ``L2^3+(2)``, a raw Hermitian Gram or a JSON dict."""
    if isinstance(spec, GaussianLattice):
        return spec
    if isinstance(spec, dict):
        return GaussianLattice(gmat(spec["hgram"] if "hgram" in spec else spec["gram"]),
                               spec.get("name"))
    if not isinstance(spec, str):
        return GaussianLattice(gmat(spec))
    text = zl._ascii_expr(spec).replace(" ", "")
    blocks = []
    for term in text.split("+"):
        m = _GTERM.match(term)
        if not m:
            raise ValidationFailed(f"cannot parse Gaussian lattice term {term!r}")
        if m.group("q") is not None:
            q = int(m.group("q"))
            block = gmat([[q]])
        else:
            block = _named_gaussian(m.group("name"))
        blocks.extend([block] * int(m.group("pow") or 1))
    return GaussianLattice(gaussian_block_diag(*blocks), spec)


# ---------------------------------------------------------------------------
# Realification


def realify_vector(z) -> tuple:
    z = gvec(z)
    return tuple(x.re for x in z) + tuple(x.im for x in z)


def complexify_vector(v) -> tuple:
    n = len(v) // 2
    return tuple(Gauss(v[k], v[n + k]) for k in range(n))


def realify_matrix(m) -> tuple:
    """Real 2n x 2n matrix of the C-linear map x -> M x."""
    m = gmat(m)
    p = [[x.re for x in r] for r in m]
    q = [[x.im for x in r] for r in m]
    top = [pr + [-x for x in qr] for pr, qr in zip(p, q)]
    bottom = [qr + pr for pr, qr in zip(p, q)]
    return ex.mat(top + bottom)


def realify_antilinear(m) -> tuple:
    """Real matrix of x -> M conj(x)."""
    m = gmat(m)
    p = [[x.re for x in r] for r in m]
    q = [[x.im for x in r] for r in m]
    top = [pr + qr for pr, qr in zip(p, q)]
    bottom = [qr + [-x for x in pr] for pr, qr in zip(p, q)]
    return ex.mat(top + bottom)


@dataclass(frozen=True)
class Realification:
    zlat: zl.ZLattice
    rho: tuple


def realify(lat: GaussianLattice) -> Realification:
    h = lat.hgram
    hr = [[x.re for x in r] for r in h]
    hi = [[x.im for x in r] for r in h]
    # (x, y) = Re conj(x)^t H y with x = a + ib, y = c + id
    top = [a + [-x for x in b] for a, b in zip(hr, hi)]
    bottom = [b + a for a, b in zip(hr, hi)]
    gram = ex.mat(top + bottom)
    rho = realify_matrix(ex.mat_scale(I, ex.identity(lat.rank, Gauss(1))))
    return Realification(zl.ZLattice(gram, f"re({lat.name})" if lat.name else None), rho)


# ---------------------------------------------------------------------------
# Roots and tetraflections


def _canonical_associate(z) -> tuple:
    z = gvec(z)
    cands = [tuple(u * x for x in z) for u in ex.UNITS]
    return min(cands, key=lambda v: tuple(x.key() for x in v))


@dataclass(frozen=True, order=True)
class ProjectiveRoot:
    key: tuple
    vector: tuple = field(compare=False)

    @staticmethod
    def of(z) -> "ProjectiveRoot":
        c = _canonical_associate(z)
        return ProjectiveRoot(tuple(x.key() for x in c), c)

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.vector) + ")"


def projective_roots(lat: GaussianLattice) -> list:
    real = realify(lat).zlat
    if not ex.is_negative_definite(real.gram):
        raise ValidationFailed("projective roots need a negative definite lattice")
    out = {ProjectiveRoot.of(complexify_vector(v)) for v in ex.negdef_enumerate(real.gram, -2)}
    return sorted(out)


def tetraflection(lat: GaussianLattice, r) -> tuple:
    """Matrix of t_r(x) = x - (1-i) h(r,x)/h(r,r) r."""
    r = gvec(r)
    rr = lat.h(r, r)
    if rr == 0:
        raise NotARoot("isotropic vector")
    c = Gauss(1, -1) / rr
    row = ex.mat_vec(ex.transpose(lat.hgram), tuple(x.conjugate() for x in r))  # r^* H
    n = lat.rank
    t = tuple(tuple((Gauss(1) if j == k else Gauss(0)) - c * r[j] * row[k] for k in range(n))
              for j in range(n))
    return t


def is_unitary(lat: GaussianLattice, g) -> bool:
    return ex.mat_mul(ex.mat_mul(ex.conj_transpose(g), lat.hgram), g) == lat.hgram


def group_closure(gens: Sequence[tuple], cap: int | None = None) -> set:
    """All products of integer matrices ``gens`` (finite group assumed)."""
    cap = closure_cap() if cap is None else cap
    if not gens:
        return set()
    n = len(gens[0])
    one = ex.identity(n)
    seen = {one}
    queue = deque([one])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = ex.mat_mul(g, s)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise ClosureCapExceeded(f"group closure exceeded cap {cap}")
                queue.append(h)
    return seen


def tetraflection_group(lat: GaussianLattice, cap: int | None = None):
    """(order, generators) of the group generated by all tetraflections."""
    gens = []
    for pr in projective_roots(lat):
        t = tetraflection(lat, pr.vector)
        if not ex.is_integral_matrix(t) or not is_unitary(lat, t):
            raise ValidationFailed("tetraflection is not a unitary automorphism")
        if ex.mat_vec(t, pr.vector) != tuple(I * x for x in pr.vector):
            raise ValidationFailed("tetraflection does not send r to i r")
        gens.append(t)
    real = [realify_matrix(t) for t in gens]
    return len(group_closure(real, cap)), gens


# ---------------------------------------------------------------------------
# Antiunitary involutions

PSI_BLOCKS = {
    "psi1": gmat([[1]]),
    "ipsi1": gmat([[(0, 1)]]),
    "psi2": gmat([[(0, 1), 0], [0, 1]]),
    "psi2'": gmat([[0, 1], [1, 0]]),
    "psi4": gmat([[0, 0, (0, 1), 0], [0, 0, 0, 1], [(0, 1), 0, 0, 0], [0, 1, 0, 0]]),
    "psi3": gmat([[(-2, 1), (2, -2), (-2, -2)],
                  [2, -1, (0, 2)],
                  [(1, 3), (-2, -2), (-3, 2)]]),
}

CHI_DEFS = {
    "chi1": "psi2^3+psi1",
    "chi2": "psi2^2+psi2'+psi1",
    "chi3": "psi2+psi2'^2+psi1",
    "chi4": "psi2'^3+psi1",
    "chi5": "psi4+psi2+psi1",
    "chi6": "psi4+psi3",
}


@dataclass(frozen=True)
class AntiunitaryInvolution:
    M: tuple
    host: GaussianLattice
    name: str | None = None

    def __post_init__(self):
        m = gmat(self.M)
        object.__setattr__(self, "M", m)
        n = self.host.rank
        if len(m) != n or any(len(r) != n for r in m):
            raise ValidationFailed("matrix size does not match the lattice")
        if not ex.is_integral_matrix(m):
            raise ValidationFailed("M must have Gaussian integer entries")
        if ex.mat_mul(ex.mat_conj(m), m) != ex.identity(n, Gauss(1)):
            raise ValidationFailed("conj(M) M != I")
        h = self.host.hgram
        if ex.mat_mul(ex.mat_mul(ex.conj_transpose(m), h), m) != ex.mat_conj(h):
            raise ValidationFailed("conj(M)^t H M != conj(H)")

    def times_i(self) -> "AntiunitaryInvolution":
        nm = None if self.name is None else (self.name[1:] if self.name.startswith("i")
                                             and self.name[1:] in _KNOWN else "i" + self.name)
        return AntiunitaryInvolution(ex.mat_scale(I, self.M), self.host, nm)

    def apply(self, x) -> tuple:
        return ex.mat_vec(self.M, tuple(Gauss.coerce(v).conjugate() for v in x))

    def real_matrix(self) -> tuple:
        return realify_antilinear(self.M)


_KNOWN = set(PSI_BLOCKS) | set(CHI_DEFS)


def involution_matrix(spec: str):
    text = spec.replace(" ", "").replace("⊕", "+").replace("ψ", "psi").replace("χ", "chi")
    text = text.replace("′", "'")
    scale = Gauss(1)
    if text.startswith("i*"):
        text, scale = text[2:], I
    elif text.startswith("i") and text[1:] in _KNOWN and text not in _KNOWN:
        text, scale = text[1:], I
    elif text.startswith("i(") and text.endswith(")"):
        text, scale = text[2:-1], I
    if text in CHI_DEFS:
        text = CHI_DEFS[text]
    blocks = []
    for term in text.split("+"):
        m = re.match(r"^([a-z0-9']+)(?:\^(\d+))?$", term)
        if not m or m.group(1) not in PSI_BLOCKS:
            raise ValidationFailed(f"unknown involution block {term!r}")
        blocks.extend([PSI_BLOCKS[m.group(1)]] * int(m.group(2) or 1))
    return ex.mat_scale(scale, gaussian_block_diag(*blocks))


def make_involution(lat: GaussianLattice, spec) -> AntiunitaryInvolution:
    """Named involution (``psi2``, ``psi4+psi2+psi1``, ``chi5``, ``i chi5``)
    or a raw matrix M, validated against ``lat``."""
    if isinstance(spec, str):
        return AntiunitaryInvolution(involution_matrix(spec), lat, spec.replace(" ", ""))
    if isinstance(spec, dict):
        if "name" in spec:
            return make_involution(lat, spec["name"])
        return AntiunitaryInvolution(gmat(spec["M"]), lat)
    return AntiunitaryInvolution(gmat(spec), lat)


@dataclass(frozen=True)
class FixedLattice:
    basis: tuple  # Gaussian matrix, columns span the fixed lattice
    zlat: zl.ZLattice


def fixed_lattice(chi: AntiunitaryInvolution) -> FixedLattice:
    x = chi.real_matrix()
    cols = ex.integer_fixed_sublattice(x)
    real = realify(chi.host).zlat
    sub = real.sublattice(cols)
    gauss_cols = [complexify_vector(c) for c in ex.columns(cols)]
    basis = ex.from_columns(gauss_cols) if gauss_cols else tuple(() for _ in range(chi.host.rank))
    return FixedLattice(basis, sub)


def fixed_basis_check(chi: AntiunitaryInvolution, basis) -> bool:
    """True iff the columns of ``basis`` are fixed by chi and form a Z-basis
    of the whole fixed lattice."""
    basis = gmat(basis)
    cols = ex.columns(basis)
    if any(chi.apply(c) != tuple(c) for c in cols):
        return False
    if not ex.is_integral_matrix(basis):
        return False
    computed = ex.integer_fixed_sublattice(chi.real_matrix())
    given = ex.from_columns([realify_vector(c) for c in cols])
    return ex.column_hermite(given) == computed


def hermitian_to_real_gram(lat: GaussianLattice, basis) -> tuple:
    """Gram of Re h on the columns of ``basis``."""
    basis = gmat(basis)
    h = ex.mat_mul(ex.mat_mul(ex.conj_transpose(basis), lat.hgram), basis)
    for r in h:
        for v in r:
            if v.im != 0:
                raise ValidationFailed("basis vectors are not real for h")
    return tuple(tuple(v.re for v in r) for r in h)


def invariant_pair(chi: AntiunitaryInvolution):
    """Sorted pair of summaries of the fixed lattices of chi and i*chi."""
    a = zl.summarize(fixed_lattice(chi).zlat)
    b = zl.summarize(fixed_lattice(chi.times_i()).zlat)
    return tuple(sorted((a, b)))


# ---------------------------------------------------------------------------
# Reduction modulo 1+i


@dataclass(frozen=True)
class Reduction:
    matrix: tuple  # rows of 0/1
    fixed_dim: int


def f2_reduce(m) -> tuple:
    return tuple(tuple((x.re + x.im) % 2 for x in gvec(r)) for r in m)


def f2_rank(m) -> int:
    rows = [int("".join(str(x) for x in r), 2) if r else 0 for r in m]
    rank = 0
    ncols = len(m[0]) if m else 0
    for bit in reversed(range(ncols)):
        piv = next((k for k in range(rank, len(rows)) if rows[k] >> bit & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for k in range(len(rows)):
            if k != rank and rows[k] >> bit & 1:
                rows[k] ^= rows[rank]
        rank += 1
    return rank


def quadratic_form_value(lat: GaussianLattice, x) -> int:
    v = lat.h(x, x)
    return (v.re // 2) % 2


def reduce_mod_one_plus_i(lat: GaussianLattice, g) -> Reduction:
    """Induced map on V = L/(1+i)L with q(x) = h(x,x)/2 mod 2.

    ``g`` is an AntiunitaryInvolution (conjugation acts trivially on V) or a
    Gaussian matrix of a unitary map.
    """
    m = g.M if isinstance(g, AntiunitaryInvolution) else gmat(g)
    n = lat.rank
    for k in range(n):
        if lat.hgram[k][k].re % 2:
            raise ValidationFailed("quadratic form not defined")
    red = f2_reduce(m)

    def image(vec):
        # lifts are real 0/1 vectors, fixed by conjugation
        return ex.mat_vec(m, gvec(vec))

    basis = [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    tests = basis + [tuple(a + b for a, b in zip(basis[j], basis[k]))
                     for j in range(n) for k in range(j + 1, n)]
    for x in tests:
        if quadratic_form_value(lat, image(x)) != quadratic_form_value(lat, x):
            raise ValidationFailed("reduction does not preserve q")
    diff = tuple(tuple((red[i][j] + (1 if i == j else 0)) % 2 for j in range(n)) for i in range(n))
    return Reduction(red, n - f2_rank(diff))


def in_basis(basis, m, antilinear: bool = False) -> tuple:
    """Matrix of x -> M x (or M conj x) written in the columns of ``basis``."""
    b = gmat(basis)
    binv = ex.inverse(b)
    right = ex.mat_conj(b) if antilinear else b
    out = ex.mat_mul(ex.mat_mul(binv, gmat(m)), right)
    return gmat(out)


# ---------------------------------------------------------------------------
# Mirrors


def gaussian_kernel_of_row(row) -> tuple:
    """Unimodular V over Z[i] with row V = (g, 0, ..., 0); returns columns 2..n
    of V, a saturated basis of the kernel of the row."""
    row = list(gvec(row))
    n = len(row)
    v = [list(r) for r in ex.identity(n, Gauss(1))]

    def col_op(src, dst, f):  # column dst -= f * column src
        row[dst] = row[dst] - f * row[src]
        for r in v:
            r[dst] = r[dst] - f * r[src]

    def swap(a, b):
        row[a], row[b] = row[b], row[a]
        for r in v:
            r[a], r[b] = r[b], r[a]

    while True:
        nz = [k for k in range(n) if row[k]]
        if not nz:
            raise NotARoot("zero functional")
        p = min(nz, key=lambda k: row[k].norm())
        if p != 0:
            swap(0, p)
        others = [k for k in range(1, n) if row[k]]
        if not others:
            break
        for k in others:
            q, _ = row[k].divmod_round(row[0])
            col_op(0, k, q)
    return tuple(tuple(r[1:]) for r in v)


def gaussian_primitive(z) -> bool:
    g = Gauss(0)
    for x in gvec(z):
        g = ex.gauss_gcd(g, x)
    return g.norm() == 1


MIRROR_REFERENCES = {
    "nodal": "L2^2+(-2)+(2)",
    "hyperelliptic": "L2^2+L1,1",
}


def mirror_orthocomplement(lat: GaussianLattice, r):
    """Orthogonal complement of a Gaussian root together with its mirror type."""
    r = gvec(r)
    if not lat.is_integral_vector(r) or lat.h(r, r) != -2:
        raise NotARoot("h(r,r) must be -2")
    if not gaussian_primitive(r):
        raise NotARoot("root is not primitive")
    row = tuple(x.conjugate() for x in r)
    functional = ex.mat_vec(ex.transpose(lat.hgram), row)  # x -> conj(r)^t H x
    k = gaussian_kernel_of_row(functional)
    h = ex.mat_mul(ex.mat_mul(ex.conj_transpose(k), lat.hgram), k)
    perp = GaussianLattice(h)
    real = realify(perp).zlat
    matches = [kind for kind, ref in MIRROR_REFERENCES.items()
               if zl.decide_isomorphic(real, realify(build_gaussian(ref)).zlat).isomorphic]
    if len(matches) != 1:
        raise UnrecognizedOrbit(f"orthogonal complement matches {matches or 'no reference'}")
    return perp, matches[0]


def gaussian_root_from_real(lat: GaussianLattice, basis, r) -> tuple:
    """Gaussian root whose mirror contains the mirror of the real root r
    (coordinates in ``basis``): B r if h = -2, B r / (1+i) if h = -4."""
    z = ex.mat_vec(gmat(basis), gvec(r))
    n = lat.h(z, z)
    if n == -2:
        return z
    if n == -4:
        w = tuple(x / ONE_PLUS_I for x in z)
        if all(x.is_integral() for x in w):
            return gvec(w)
    raise NotARoot(f"no Gaussian root attached (h = {n})")


# ---------------------------------------------------------------------------
# Restrictions from the fixed lattice


def gaussian_root_predicate(lat: GaussianLattice, basis):
    """Filter on roots r of the fixed lattice (coordinates in ``basis``):
    the reflection in r extends to Lambda iff 2 B r / (r,r) lies in the dual."""
    b = gmat(basis)
    if not ex.is_integral_matrix(b):
        raise ValidationFailed("basis is not inside the lattice")

    def predicate(r) -> bool:
        z = ex.mat_vec(b, gvec(r))
        rr = lat.h(z, z)
        if rr == 0:
            return False
        w = tuple(x * Gauss(2) / rr for x in z)
        return lat.in_dual(w)

    return predicate


def extends_to_gaussian(lat: GaussianLattice, chi: AntiunitaryInvolution, basis, m) -> bool:
    """True iff the isometry ``m`` of the fixed lattice (in ``basis``
    coordinates) is induced by a unitary automorphism of ``lat``."""
    b = gmat(basis)
    if not fixed_basis_check(chi, b):
        raise ValidationFailed("basis does not span the fixed lattice of chi")
    gram = hermitian_to_real_gram(lat, b)
    m_int = ex.to_int_matrix(m)
    if ex.mat_mul(ex.mat_mul(ex.transpose(m_int), gram), m_int) != gram:
        raise ValidationFailed("matrix does not preserve the Gram matrix")
    g = ex.mat_mul(ex.mat_mul(b, gmat(m_int)), ex.inverse(b))
    g = gmat(g)
    if not ex.is_integral_matrix(g):
        return False
    if not is_unitary(lat, g):
        raise ValidationFailed("extension is integral but not unitary")
    # the extension commutes with chi on the fixed lattice by construction
    return True
