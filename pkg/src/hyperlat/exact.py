"""Exact scalars and dense linear algebra over Z, Q and Z[i].

Matrices are tuples of row tuples so that they are immutable and hashable.
Entries may be ``int``, ``Fraction`` or ``Gauss``.  Nothing here uses floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

Matrix = tuple  # tuple[tuple[scalar, ...], ...]
Vector = tuple


class LinAlgError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian numbers


def _norm_part(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Gauss:
    """Element re + i*im of Q(i); parts are ``int`` or ``Fraction``.

    Gaussian integers are the instances with ``is_integral()`` true.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Gauss):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        object.__setattr__(self, "re", _norm_part(re))
        object.__setattr__(self, "im", _norm_part(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gauss is immutable")

    @staticmethod
    def coerce(x) -> "Gauss":
        if isinstance(x, Gauss):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return Gauss(x[0], x[1])
        return Gauss(x, 0)

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else mag}i"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, Gauss):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return Gauss(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self):
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "Gauss":
        return Gauss(self.re, -self.im)

    def __truediv__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return Gauss(Fraction(p.re) / n, Fraction(p.im) / n)

    def __rtruediv__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (Gauss(1) / self) ** (-k)
        out, base = Gauss(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_integral(self) -> bool:
        return isinstance(self.re, int) and isinstance(self.im, int)

    def is_real(self) -> bool:
        return self.im == 0

    def divmod_round(self, other: "Gauss"):
        """Euclidean division in Z[i] with nearest-integer quotient."""
        q = self / other
        qr = _round_half(Fraction(q.re))
        qi = _round_half(Fraction(q.im))
        quo = Gauss(qr, qi)
        return quo, self - quo * other

    def key(self):
        return (self.re, self.im)


I = Gauss(0, 1)
ONE_PLUS_I = Gauss(1, 1)
UNITS = (Gauss(1), Gauss(0, 1), Gauss(-1), Gauss(0, -1))


def _round_half(x: Fraction) -> int:
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def _as_gauss(x):
    if isinstance(x, Gauss):
        return x
    if isinstance(x, (int, Fraction)):
        return Gauss(x, 0)
    return None


def conj(x):
    return x.conjugate() if isinstance(x, Gauss) else x


def gauss_gcd(a: Gauss, b: Gauss) -> Gauss:
    a, b = Gauss.coerce(a), Gauss.coerce(b)
    while b:
        _, r = a.divmod_round(b)
        a, b = b, r
    return a


def is_unit(x) -> bool:
    if isinstance(x, Gauss):
        return x.is_integral() and x.norm() == 1
    return x in (1, -1)


def divisible_by_one_plus_i(x) -> bool:
    g = Gauss.coerce(x)
    return g.is_integral() and (g.re + g.im) % 2 == 0


# ---------------------------------------------------------------------------
# Dense matrices


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def dims(a: Matrix):
    return len(a), (len(a[0]) if a else 0)


def identity(n: int, one=1) -> Matrix:
    zero = one - one
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def mat_conj(a: Matrix) -> Matrix:
    return tuple(tuple(conj(x) for x in row) for row in a)


def conj_transpose(a: Matrix) -> Matrix:
    return transpose(mat_conj(a))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b) if a else False:
        raise LinAlgError("dimension mismatch in product")
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a)


def mat_vec(a: Matrix, v: Sequence) -> Vector:
    return tuple(sum(x * y for x, y in zip(r, v)) for r in a)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def bilinear(g: Matrix, u: Sequence, v: Sequence):
    return dot(u, mat_vec(g, v))


def mat_pow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    base = a
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows, off = [], 0
    for b in blocks:
        k = len(b)
        for r in b:
            rows.append((0,) * off + tuple(r) + (0,) * (n - off - k))
        off += k
    return tuple(rows)


def columns(a: Matrix):
    return transpose(a)


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return transpose(tuple(tuple(c) for c in cols))


def is_symmetric(a: Matrix) -> bool:
    return a == transpose(a)


def is_hermitian(a: Matrix) -> bool:
    return all(a[i][j] == conj(a[j][i]) for i in range(len(a)) for j in range(len(a)))


def _field(x):
    if isinstance(x, Gauss):
        return x
    return Fraction(x)


def det(a: Matrix):
    """Determinant; Bareiss for integer matrices, elimination otherwise."""
    n = len(a)
    if n == 0:
        return 1
    if all(isinstance(x, int) for r in a for x in r):
        return _bareiss(a)
    m = [[_field(x) for x in r] for r in a]
    out = _field(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            out = -out
        out = out * m[k][k]
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / m[k][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return _simplify(out)


def _bareiss(a: Matrix) -> int:
    m = [list(r) for r in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    if isinstance(x, Gauss) and x.im == 0:
        return _simplify(Fraction(x.re)) if not isinstance(x.re, int) else x.re
    return x


def inverse(a: Matrix) -> Matrix:
    """Inverse over Q or Q(i); integral entries are returned as ints."""
    n = len(a)
    gaussian = any(isinstance(x, Gauss) for r in a for x in r)
    one = Gauss(1) if gaussian else Fraction(1)
    zero = one - one
    m = [[(Gauss.coerce(x) if gaussian else Fraction(x)) for x in r]
         + [one if i == j else zero for j in range(n)] for i, r in enumerate(a)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            raise LinAlgError("singular matrix")
        m[k], m[piv] = m[piv], m[k]
        p = m[k][k]
        m[k] = [x / p for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return tuple(tuple(_tidy(x) for x in r[n:]) for r in m)


def _tidy(x):
    if isinstance(x, Gauss):
        return Gauss(x.re, x.im)
    return _simplify(x)


def is_integral_matrix(a: Matrix) -> bool:
    for r in a:
        for x in r:
            if isinstance(x, Gauss):
                if not x.is_integral():
                    return False
            elif isinstance(x, Fraction):
                if x.denominator != 1:
                    return False
    return True


def to_int_matrix(a: Matrix) -> Matrix:
    out = []
    for r in a:
        row = []
        for x in r:
            if isinstance(x, Gauss):
                if x.im != 0:
                    raise LinAlgError("non-real entry")
                x = x.re
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise LinAlgError("non-integral entry")
                x = x.numerator
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


def to_gauss_matrix(a: Matrix) -> Matrix:
    return tuple(tuple(Gauss.coerce(x) for x in r) for r in a)


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


# ---------------------------------------------------------------------------
# Integer normal forms


def smith_normal_form(m: Matrix):
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D in Smith form."""
    rows, cols = dims(m)
    a = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for r in a:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if done:
                # divisibility of the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move a smaller remainder to the pivot position
            best = (t, t)
            for i in range(t, rows):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if a[t][t] < 0:
            neg_row(t)
        t += 1
    U, D, V = mat(u), mat(a), mat(v)
    return U, D, V


def smith_diagonal(m: Matrix) -> list:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(dims(m)))]


def hermite_rows(m: Matrix) -> Matrix:
    """Row-style Hermite normal form; zero rows are dropped."""
    a = [list(r) for r in m]
    rows, cols = dims(m)
    out_row = 0
    for c in range(cols):
        piv_rows = [i for i in range(out_row, rows) if a[i][c]]
        if not piv_rows:
            continue
        while True:
            piv_rows = [i for i in range(out_row, rows) if a[i][c]]
            p = min(piv_rows, key=lambda i: abs(a[i][c]))
            a[out_row], a[p] = a[p], a[out_row]
            others = [i for i in range(out_row + 1, rows) if a[i][c]]
            if not others:
                break
            for i in others:
                f = a[i][c] // a[out_row][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[out_row])]
        if a[out_row][c] < 0:
            a[out_row] = [-x for x in a[out_row]]
        piv = a[out_row][c]
        for i in range(out_row):
            f = a[i][c] // piv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[out_row])]
        out_row += 1
        if out_row == rows:
            break
    return mat(a[:out_row])


def column_hermite(basis_cols: Matrix) -> Matrix:
    """Canonical basis (as columns) of the lattice spanned by the columns."""
    n = len(basis_cols)
    if not basis_cols or not basis_cols[0]:
        return tuple(() for _ in range(n))
    h = hermite_rows(transpose(basis_cols))
    if not h:
        return tuple(() for _ in range(n))
    return transpose(h)


def integer_kernel(a: Matrix, ncols: int | None = None) -> Matrix:
    """Saturated Z-basis (columns, Hermite form) of {v : a v = 0}."""
    if not a:
        n = ncols or 0
        return identity(n)
    n = len(a[0])
    _, d, v = smith_normal_form(a)
    rank = sum(1 for i in range(min(dims(a))) if d[i][i])
    kern_cols = [tuple(v[r][j] for r in range(n)) for j in range(rank, n)]
    if not kern_cols:
        return tuple(() for _ in range(n))
    return column_hermite(from_columns(kern_cols))


def integer_fixed_sublattice(x: Matrix) -> Matrix:
    """Z-basis (columns) of the vectors fixed by an integral involution."""
    n = len(x)
    if mat_mul(x, x) != identity(n):
        raise LinAlgError("matrix is not an involution")
    return integer_kernel(mat_sub(x, identity(n)))


def solve_integer(a: Matrix, b: Sequence[int]):
    """One integer solution of a v = b, or None."""
    rows, cols = dims(a)
    u, d, v = smith_normal_form(a)
    ub = mat_vec(u, b)
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di == 0:
            if ub[i] != 0:
                return None
            continue
        if ub[i] % di:
            return None
        y[i] = ub[i] // di
    return mat_vec(v, y)


def is_unimodular(b: Matrix) -> bool:
    if not is_integral_matrix(b):
        return False
    return is_unit(Gauss.coerce(det(b))) if any(isinstance(x, Gauss) for r in b for x in r) \
        else det(b) in (1, -1)


# ---------------------------------------------------------------------------
# Signature and definite enumeration


def ldl_diagonal(g: Matrix) -> list:
    """Diagonal of a rational congruence diagonalisation of a symmetric matrix."""
    n = len(g)
    a = [[Fraction(x) for x in r] for r in g]
    diag = []
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                diag.extend([Fraction(0)] * len(active))
                break
            i, j = pair
            # e_i <- e_i + e_j makes the diagonal entry 2 a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        diag.append(p)
        active.remove(piv)
        row = a[piv][:]
        for i in active:
            f = row[i] / p
            if f:
                for k in active:
                    a[i][k] -= f * row[k]
    return diag


def signature(g: Matrix):
    if not is_symmetric(g):
        raise LinAlgError("signature needs a symmetric matrix")
    d = ldl_diagonal(g)
    return (sum(1 for x in d if x > 0), sum(1 for x in d if x < 0), sum(1 for x in d if x == 0))


def is_negative_definite(g: Matrix) -> bool:
    return signature(g) == (0, len(g), 0)


def _cholesky_upper(q: Matrix):
    """q = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 for positive definite q."""
    n = len(q)
    a = [[Fraction(x) for x in r] for r in q]
    for i in range(n):
        if a[i][i] <= 0:
            raise LinAlgError("form is not definite")
        for j in range(i + 1, n):
            a[j][i] = a[i][j]
            a[i][j] = a[i][j] / a[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= a[k][i] * a[i][l]
    d = [a[i][i] for i in range(n)]
    u = [[a[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return d, u


def _floor_sqrt(x: Fraction) -> int:
    return isqrt(x.numerator * x.denominator) // x.denominator


def negdef_enumerate(g: Matrix, target, offset: Sequence | None = None) -> list:
    """All integer v with (v+offset)^t g (v+offset) == target, g negative definite.

    Output is sorted lexicographically.
    """
    n = len(g)
    offset = tuple(Fraction(x) for x in (offset or (0,) * n))
    q = tuple(tuple(-x for x in r) for r in g)
    try:
        d, u = _cholesky_upper(q)
    except LinAlgError:
        raise LinAlgError("matrix is not negative definite") from None
    budget = Fraction(-target)
    if budget < 0:
        return []
    found = []
    x = [Fraction(0)] * n
    v = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            if remaining == 0:
                found.append(tuple(v))
            return
        center = -sum(u[i][j] * x[j] for j in range(i + 1, n))
        s = center - offset[i]
        bound = remaining / d[i]
        r = _floor_sqrt(bound)
        lo = (s.numerator // s.denominator) - r - 1
        hi = -((-s.numerator) // s.denominator) + r + 1
        for vi in range(lo, hi + 1):
            t = vi - s
            used = d[i] * t * t
            if used > remaining:
                continue
            v[i] = vi
            x[i] = vi + offset[i]
            rec(i - 1, remaining - used)

    if n == 0:
        return [()] if budget == 0 else []
    rec(n - 1, budget)
    found.sort()
    return found


def short_vectors(g: Matrix, norm: int) -> list:
    """Vectors of a negative definite lattice with (v,v) == norm."""
    return negdef_enumerate(g, norm)
