"""Involution classes of a Weyl group acting on Q/2Q.

Matrices over F2 are stored as tuples of column bitmasks (bit k of column j is
entry (k, j)).  -1 reduces to the identity, so an involution class and the
class of its negative share one image mod 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .richardson import (
    CoxeterSystem,
    GeometricRep,
    class_names,
    involution_classes,
    named_system,
    opposite_class,
)


class OrbitCapExceeded(RuntimeError):
    pass


class FormNotPreserved(ValueError):
    pass


def to_bits(m) -> tuple:
    """Column bitmasks of a 0/1 (or integer) square matrix."""
    n = len(m)
    return tuple(sum((int(m[k][j]) % 2) << k for k in range(n)) for j in range(n))


def from_bits(cols, n) -> tuple:
    return tuple(tuple((cols[j] >> k) & 1 for j in range(n)) for k in range(n))


def apply_bits(cols, v: int) -> int:
    out, j = 0, 0
    while v:
        if v & 1:
            out ^= cols[j]
        v >>= 1
        j += 1
    return out


def compose_bits(a, b) -> tuple:
    """Column masks of a*b."""
    return tuple(apply_bits(a, c) for c in b)


def fixed_dimension(cols) -> int:
    n = len(cols)
    rows = [cols[j] ^ (1 << j) for j in range(n)]  # columns of g - 1
    rank = 0
    for bit in range(n):
        piv = next((k for k in range(rank, n) if rows[k] >> bit & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for k in range(n):
            if k != rank and rows[k] >> bit & 1:
                rows[k] ^= rows[rank]
        rank += 1
    return n - rank


def quadratic_form(rep: GeometricRep):
    """q(x) = (x, x)/2 mod 2 on Q/2Q for a simply laced system."""
    n = rep.sys.rank
    form = rep.form
    if any(form[i][i] != 2 for i in range(n)):
        raise ValueError("quadratic form needs a simply laced system")

    def q(v: int) -> int:
        x = [(v >> k) & 1 for k in range(n)]
        total = sum(form[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
        return int(total / 2) % 2

    return q


def simple_reflections_mod2(rep: GeometricRep) -> list:
    return [to_bits(s) for s in rep.reflections]


def preserves(cols, q, n) -> bool:
    return all(q(apply_bits(cols, v)) == q(v) for v in range(1 << n))


def conjugacy_orbit(cols, gens, cap: int = 10 ** 6) -> set:
    seen = {cols}
    queue = deque([cols])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose_bits(s, compose_bits(g, s))
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise OrbitCapExceeded("conjugacy orbit exceeds the cap")
                queue.append(h)
    return seen


def group_order_mod2(gens, cap: int = 5 * 10 ** 6) -> int:
    """Size of the group generated by ``gens`` (BFS by right multiplication).

    Elements are packed into one integer, n bits per column.
    """
    n = len(gens[0])
    low = (1 << n) - 1
    # right multiplication by s: new column j is the XOR of columns in s[j]
    plans = [[(j, [k for k in range(n) if s[j] >> k & 1]) for j in range(n)] for s in gens]

    def times(g, plan):
        out = 0
        for j, src in plan:
            c = 0
            for k in src:
                c ^= (g >> (n * k)) & low
            out |= c << (n * j)
        return out

    def transvection(s):
        # s = identity plus column i added into some columns: one shift and XOR
        for i in range(n):
            if s[i] != 1 << i:
                continue
            spread = 0
            for j in range(n):
                if s[j] == 1 << j:
                    continue
                if s[j] != (1 << j) | (1 << i):
                    break
                spread |= 1 << (n * j)
            else:
                return lambda g, i=i, spread=spread: g ^ (((g >> (n * i)) & low) * spread)
        return None

    steps = []
    for s, plan in zip(gens, plans):
        fast = transvection(s)
        steps.append(fast or (lambda g, plan=plan: times(g, plan)))

    ident = sum(1 << (j * n + j) for j in range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for step in steps:
            h = step(g)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise OrbitCapExceeded("group exceeds the cap")
                queue.append(h)
    return len(seen)


@dataclass(frozen=True)
class F2Class:
    label: str
    pair: tuple  # names of the two classes {u, -u}
    fixed_dim: int


class F2Classifier:
    """Identify mod-2 images of involutions of W(sys) for systems with -1 in W."""

    def __init__(self, sys: CoxeterSystem):
        self.sys = sys
        self.rep = GeometricRep(sys)
        self.n = sys.rank
        self.q = quadratic_form(self.rep)
        self.gens = simple_reflections_mod2(self.rep)
        classes = involution_classes(sys)
        names = class_names(sys, classes)
        self.pairs = []
        done = set()
        for c in classes:
            if c.representative in done:
                continue
            o = opposite_class(sys, classes, c)
            done.update({c.representative, o.representative})
            a, b = sorted([c, o], key=lambda x: (len(x.representative), x.representative))
            pair = (names[a.representative], names[b.representative])
            w = to_bits(self.rep.longest_element(a.representative))
            self.pairs.append((pair, w))

    def classify(self, g, cap: int = 10 ** 6) -> F2Class:
        cols = to_bits(g) if _is_matrix(g) else tuple(g)
        if not preserves(cols, self.q, self.n):
            raise FormNotPreserved("matrix does not preserve q")
        orbit = conjugacy_orbit(cols, self.gens, cap)
        for pair, w in self.pairs:
            if w in orbit:
                return F2Class(f"({pair[0]}, {pair[1]})", pair, fixed_dimension(cols))
        raise KeyError("element is not an involution of the group")


def _is_matrix(g) -> bool:
    return isinstance(g[0], (tuple, list))


_E7 = None


def e7_classifier() -> F2Classifier:
    global _E7
    if _E7 is None:
        _E7 = F2Classifier(named_system("E7"))
    return _E7


def f2_class_of(sys: CoxeterSystem, g) -> F2Class:
    if sys.m == named_system("E7").m:
        return e7_classifier().classify(g)
    return F2Classifier(sys).classify(g)
