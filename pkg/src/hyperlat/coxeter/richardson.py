"""Conjugacy classes of involutions in Coxeter groups (Richardson's method).

Every involution is conjugate to the longest element w_I of a standard
parabolic subgroup W_I acting as -1 on its span.  Two such subsets give
conjugate involutions iff they are linked by a chain of elementary moves
I -> tau_K(I) with K = I + {alpha} of finite type, where tau_K is the
diagram involution induced by -w_K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .. import exact as ex
from .types import combine_types, connected_type, type_string

INF = 0  # entry used for m = infinity


class UnrecognizedComponent(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterSystem:
    m: tuple  # symmetric, m[i][i] == 1, INF for infinity
    labels: tuple = ()

    def __post_init__(self):
        m = ex.mat(self.m)
        object.__setattr__(self, "m", m)
        n = len(m)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(k + 1) for k in range(n)))
        for i in range(n):
            if m[i][i] != 1:
                raise ValueError("diagonal of a Coxeter matrix must be 1")
            for j in range(n):
                if m[i][j] != m[j][i] or (i != j and m[i][j] != INF and m[i][j] < 2):
                    raise ValueError("invalid Coxeter matrix")

    @property
    def rank(self) -> int:
        return len(self.m)

    def adjacency(self, nodes) -> dict:
        nodes = list(nodes)
        adj = {v: {} for v in nodes}
        for i, j in combinations(nodes, 2):
            mij = self.m[i][j]
            if mij == 2:
                continue
            lab = "inf" if mij == INF else mij
            adj[i][j] = adj[j][i] = lab
        return adj

    def components(self, nodes) -> list:
        adj = self.adjacency(nodes)
        seen, comps = set(), []
        for v in sorted(adj):
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    @staticmethod
    def from_edges(n: int, edges: dict, labels=()) -> "CoxeterSystem":
        """``edges`` maps 0-based pairs (i, j) to m; other pairs commute."""
        m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (i, j), v in edges.items():
            m[i][j] = m[j][i] = v
        return CoxeterSystem(ex.mat(m), tuple(labels))


def named_system(name: str) -> CoxeterSystem:
    """A_n, B_n, D_n, E6-8, F4, G2, H3, H4, I2(m).  E7 uses the chain
    1-2-3-4-5-6 with node 7 attached to node 3."""
    name = name.strip().upper()
    if name.startswith("I2(") and name.endswith(")"):
        return CoxeterSystem.from_edges(2, {(0, 1): int(name[3:-1])})
    letter, n = name[0], int(name[1:])
    chain = {(k, k + 1): 3 for k in range(n - 1)}
    if letter == "A":
        return CoxeterSystem.from_edges(n, chain)
    if letter == "B":
        chain[(n - 2, n - 1)] = 4
        return CoxeterSystem.from_edges(n, chain)
    if letter == "D":
        edges = {(k, k + 1): 3 for k in range(n - 2)}
        edges[(n - 3, n - 1)] = 3
        return CoxeterSystem.from_edges(n, edges)
    if letter == "E" and n == 7:
        edges = {(k, k + 1): 3 for k in range(5)}
        edges[(2, 6)] = 3
        return CoxeterSystem.from_edges(7, edges)
    if letter == "E" and n in (6, 8):
        # chain 1..n-1 with the extra node attached to node 3
        edges = {(k, k + 1): 3 for k in range(n - 2)}
        edges[(2, n - 1)] = 3
        return CoxeterSystem.from_edges(n, edges)
    if letter == "F" and n == 4:
        return CoxeterSystem.from_edges(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3})
    if letter == "G" and n == 2:
        return CoxeterSystem.from_edges(2, {(0, 1): 6})
    if letter == "H" and n in (3, 4):
        chain[(0, 1)] = 5
        return CoxeterSystem.from_edges(n, chain)
    raise ValueError(f"unknown Coxeter system {name}")


# ---------------------------------------------------------------------------
# Finite components


def _path(adj):
    nodes = list(adj)
    if len(nodes) == 1:
        return nodes
    ends = [v for v in nodes if len(adj[v]) == 1]
    if len(ends) != 2 or any(len(adj[v]) > 2 for v in nodes):
        return None
    out, prev = [ends[0]], None
    while len(out) < len(nodes):
        nxt = [w for w in adj[out[-1]] if w != prev]
        prev = out[-1]
        out.append(nxt[0])
    return out


def finite_type(adj) -> tuple:
    """('A', n) style name of a connected finite Coxeter graph, with H and
    I2(m) recognised combinatorially."""
    n = len(adj)
    if n == 2:
        (a, b) = list(adj)
        m = adj[a].get(b, 2)
        return {3: ("A", 2), 4: ("B", 2), 6: ("G", 2)}.get(m, ("I", m)) if m != "inf" else None
    path = _path(adj)
    if path is not None:
        marks = [adj[path[k]][path[k + 1]] for k in range(n - 1)]
        if marks.count(5) == 1 and all(x in (3, 5) for x in marks) and n in (3, 4):
            if marks[0] == 5 or marks[-1] == 5:
                return ("H", n)
    t = connected_type(adj)
    if t is None or t[2]:
        return None
    return (t[0], t[1])


def has_minus_one(t: tuple) -> bool:
    letter, n = t
    if letter == "A":
        return n == 1
    if letter == "D":
        return n % 2 == 0
    if letter == "E":
        return n in (7, 8)
    if letter == "I":
        return n % 2 == 0
    return letter in ("B", "F", "G", "H")


def diagram_involution(adj, t: tuple) -> dict:
    """Permutation of the nodes of a connected finite graph induced by -w_0."""
    nodes = list(adj)
    ident = {v: v for v in nodes}
    letter, n = t
    if letter == "A" and n >= 2:
        p = _path(adj)
        return {p[k]: p[n - 1 - k] for k in range(n)}
    if letter == "I" and n % 2 == 1:
        a, b = nodes
        return {a: b, b: a}
    if letter == "D" and n % 2 == 1:
        fork = next(v for v in nodes if len(adj[v]) == 3)
        leaves = sorted(w for w in adj[fork] if len(adj[w]) == 1)
        if len(leaves) == 3:  # D3 is A3, handled above; guard anyway
            return ident
        out = dict(ident)
        out[leaves[0]], out[leaves[1]] = leaves[1], leaves[0]
        return out
    if letter == "E" and n == 6:
        center = next(v for v in nodes if len(adj[v]) == 3)
        arms = []
        for start in adj[center]:
            arm, prev, cur = [start], center, start
            while True:
                nxt = [w for w in adj[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                arm.append(cur)
            arms.append(arm)
        a, b = [arm for arm in arms if len(arm) == 2]
        out = dict(ident)
        for x, y in zip(a, b):
            out[x], out[y] = y, x
        return out
    return ident


def component_types(sys: CoxeterSystem, nodes) -> list:
    out = []
    for comp in sys.components(nodes):
        adj = sys.adjacency(comp)
        t = finite_type(adj)
        out.append((comp, t))
    return out


def subset_type_name(sys: CoxeterSystem, nodes) -> str:
    parts = []
    for _, t in component_types(sys, nodes):
        if t is None:
            return "?"
        parts.append((t[0], t[1], False))
    return _combine(parts)


def _combine(parts):
    if any(p[0] in "HI" for p in parts):
        names = sorted(f"I2({p[1]})" if p[0] == "I" else type_string(p) for p in parts)
        return " ".join(names) if names else "1"
    return combine_types(parts)


# ---------------------------------------------------------------------------
# Classes


@dataclass(frozen=True)
class InvolutionClass:
    representative: tuple
    type_name: str
    members: tuple

    def label(self, sys: CoxeterSystem) -> str:
        return "{" + ",".join(sys.labels[i] for i in self.representative) + "}"


def minus_one_subsets(sys: CoxeterSystem) -> list:
    n = sys.rank
    out = []
    for size in range(n + 1):
        for sub in combinations(range(n), size):
            ok = True
            for comp, t in component_types(sys, sub):
                if t is None or not has_minus_one(t):
                    ok = False
                    break
            if ok:
                out.append(sub)
    return out


def involution_classes(sys: CoxeterSystem) -> list:
    subsets = minus_one_subsets(sys)
    index = {s: k for k, s in enumerate(subsets)}
    parent = list(range(len(subsets)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for s in subsets:
        ss = set(s)
        for alpha in range(sys.rank):
            if alpha in ss:
                continue
            k = tuple(sorted(ss | {alpha}))
            perm = {}
            finite = True
            for comp, t in component_types(sys, k):
                if t is None:
                    finite = False
                    break
                perm.update(diagram_involution(sys.adjacency(comp), t))
            if not finite:
                continue
            image = tuple(sorted(perm[v] for v in s))
            if image not in index:
                raise RuntimeError("elementary move left the (-1) subsets")
            union(index[s], index[image])
    groups = {}
    for s in subsets:
        groups.setdefault(find(index[s]), []).append(s)
    classes = []
    for members in groups.values():
        members = sorted(members)
        rep = members[0]
        classes.append(InvolutionClass(rep, subset_type_name(sys, rep), tuple(members)))
    classes.sort(key=lambda c: (len(c.representative), c.representative))
    return classes


def class_names(sys: CoxeterSystem, classes: list) -> dict:
    """Distinct names: a repeated type gets primes in order of representative."""
    seen = {}
    out = {}
    for c in classes:
        k = seen.get(c.type_name, 0)
        out[c.representative] = c.type_name + "'" * k
        seen[c.type_name] = k + 1
    return out


def class_containing(classes: list, subset) -> InvolutionClass:
    s = tuple(sorted(subset))
    for c in classes:
        if s in c.members:
            return c
    raise KeyError(f"{s} is not a (-1) subset")


# ---------------------------------------------------------------------------
# Geometric representation (crystallographic systems)


def cartan_matrix(sys: CoxeterSystem) -> tuple:
    """Integral Cartan matrix a_ij = <alpha_i^vee, alpha_j> realising ``sys``."""
    n = sys.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in combinations(range(n), 2):
        mij = sys.m[i][j]
        if mij == 2:
            continue
        if mij == 3:
            a[i][j] = a[j][i] = -1
        elif mij == 4:
            a[i][j], a[j][i] = -2, -1
        elif mij == 6:
            a[i][j], a[j][i] = -3, -1
        else:
            raise ValueError("system is not crystallographic")
    return ex.mat(a)


def root_lengths(sys: CoxeterSystem, cartan) -> list:
    """d_i = (alpha_i, alpha_i) with d_i a_ij = d_j a_ji (Cartan graph is a forest)."""
    n = sys.rank
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(2)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if cartan[i][j] and i != j and d[j] is None:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    stack.append(j)
    for i in range(n):
        for j in range(n):
            if d[i] * cartan[i][j] != d[j] * cartan[j][i]:
                raise ValueError("Cartan matrix is not symmetrisable")
    return d


class GeometricRep:
    """Simple reflections in root coordinates and the invariant form."""

    def __init__(self, sys: CoxeterSystem):
        self.sys = sys
        self.cartan = cartan_matrix(sys)
        n = sys.rank
        d = root_lengths(sys, self.cartan)
        self.form = tuple(tuple(d[i] * self.cartan[i][j] / 2 for j in range(n)) for i in range(n))
        self.reflections = []
        for i in range(n):
            cols = []
            for j in range(n):
                col = [1 if k == j else 0 for k in range(n)]
                col[i] -= self.cartan[i][j]
                cols.append(tuple(col))
            self.reflections.append(ex.from_columns(cols))

    def pair(self, u, v):
        return ex.bilinear(self.form, u, v)

    def roots(self) -> list:
        n = self.sys.rank
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for r in frontier:
                for s in self.reflections:
                    x = ex.mat_vec(s, r)
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
                        if len(seen) > 10 ** 5:
                            raise ValueError("root system is not finite")
            frontier = nxt
        return sorted(seen)

    def longest_element(self, subset) -> tuple:
        """w_I by greedy right multiplication while some w(alpha_i) > 0."""
        n = self.sys.rank
        w = ex.identity(n)
        while True:
            for i in subset:
                col = tuple(w[k][i] for k in range(n))
                if all(x >= 0 for x in col):
                    w = ex.mat_mul(w, self.reflections[i])
                    break
            else:
                return w

    def dominant_zero_set(self, y) -> tuple:
        """Simple roots orthogonal to the dominant W-translate of y."""
        n = self.sys.rank
        y = tuple(Fraction(v) for v in y)
        for _ in range(10 ** 6):
            bad = next((i for i in range(n) if self._pair_simple(i, y) < 0), None)
            if bad is None:
                return tuple(i for i in range(n) if self._pair_simple(i, y) == 0)
            y = ex.mat_vec(self.reflections[bad], y)
        raise RuntimeError("dominance loop did not terminate")

    def _pair_simple(self, i, y):
        return sum(self.form[i][j] * y[j] for j in range(len(y)))

    def involution_subset(self, c) -> tuple:
        """Subset J with c conjugate to w_J, for an involution c of W."""
        n = self.sys.rank
        if ex.mat_mul(c, c) != ex.identity(n):
            raise ValueError("not an involution")
        fixed = ex.columns(ex.integer_kernel(ex.mat_sub(c, ex.identity(n))))
        roots = self.roots()
        relevant = [r for r in roots if any(self.pair(r, u) for u in fixed)]
        scale = 2
        while True:
            y = tuple(sum(scale ** k * u[i] for k, u in enumerate(fixed)) for i in range(n)) \
                if fixed else (0,) * n
            if all(self.pair(r, y) != 0 for r in relevant):
                return self.dominant_zero_set(y)
            scale += 1


def opposite_class(sys: CoxeterSystem, classes: list, cls: InvolutionClass):
    """Class of -w_I when -1 lies in W (finite crystallographic systems)."""
    rep = GeometricRep(sys)
    w = rep.longest_element(cls.representative)
    minus = ex.mat_scale(-1, w)
    return class_containing(classes, rep.involution_subset(minus))


def brute_force_class_count(sys: CoxeterSystem, cap: int = 10 ** 5) -> int:
    """Number of conjugacy classes of elements of order <= 2, by enumerating
    the whole group in the geometric representation (small systems only)."""
    rep = GeometricRep(sys)
    n = sys.rank
    ident = ex.identity(n)
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in rep.reflections:
                h = ex.mat_mul(g, s)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
                    if len(group) > cap:
                        raise ValueError("group too large for enumeration")
        frontier = nxt
    involutions = {g for g in group if ex.mat_mul(g, g) == ident}
    classes = 0
    while involutions:
        g = involutions.pop()
        for x in group:
            involutions.discard(ex.mat_mul(ex.mat_mul(x, g), ex.inverse(x)))
        classes += 1
    return classes
