"""Coxeter diagrams built from Gram matrices of simple roots."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .. import exact as ex
from .types import combine_types, connected_type

ANGLE_OF_RATIO = {Fraction(0): 2, Fraction(1, 4): 3, Fraction(1, 2): 4, Fraction(3, 4): 6}


class NonCrystallographicAngle(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    kind: str  # "angle" | "parallel" | "ultraparallel"
    m: int | None = None
    value: int | Fraction | None = None

    def label(self):
        if self.kind == "angle":
            return self.m
        return "inf" if self.kind == "parallel" else "ultra"


def classify_edge(gij, gii, gjj) -> Edge:
    t = Fraction(gij * gij) / (gii * gjj)
    if t in ANGLE_OF_RATIO:
        return Edge("angle", ANGLE_OF_RATIO[t], gij)
    if t == 1:
        return Edge("parallel", None, gij)
    if t > 1:
        return Edge("ultraparallel", None, gij)
    raise NonCrystallographicAngle(f"ratio {t}")


@dataclass(frozen=True)
class CoxeterDiagram:
    gram: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        g = ex.mat(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"r{k + 1}" for k in range(n)))
        edges = {}
        for i in range(n):
            if g[i][i] >= 0:
                raise ValueError(f"node {i} has nonnegative norm")
        for i, j in combinations(range(n), 2):
            if g[i][j] < 0:
                raise ValueError(f"negative inner product between {i} and {j}")
            try:
                edges[(i, j)] = classify_edge(g[i][j], g[i][i], g[j][j])
            except NonCrystallographicAngle as err:
                raise NonCrystallographicAngle(f"pair ({i}, {j}): {err}") from None
        object.__setattr__(self, "_edges", edges)

    @property
    def size(self) -> int:
        return len(self.gram)

    @property
    def norms(self) -> tuple:
        return tuple(self.gram[i][i] for i in range(self.size))

    def edge(self, i: int, j: int) -> Edge:
        if i == j:
            raise ValueError("no edge from a node to itself")
        return self._edges[(min(i, j), max(i, j))]

    def adjacency(self, nodes=None) -> dict:
        """``{i: {j: label}}`` restricted to ``nodes`` (edges with m > 2)."""
        nodes = range(self.size) if nodes is None else nodes
        nodes = list(nodes)
        adj = {i: {} for i in nodes}
        for i, j in combinations(nodes, 2):
            e = self.edge(i, j)
            if e.kind == "angle" and e.m == 2:
                continue
            adj[i][j] = adj[j][i] = e.label()
        return adj

    def sub(self, nodes) -> "CoxeterDiagram":
        nodes = list(nodes)
        g = tuple(tuple(self.gram[i][j] for j in nodes) for i in nodes)
        return CoxeterDiagram(g, tuple(self.labels[i] for i in nodes))

    def multigraph(self):
        """Node norms and edge classes: a relabelling-invariant description."""
        return (self.norms, {k: v.label() for k, v in self._edges.items()
                             if not (v.kind == "angle" and v.m == 2)})


def diagram_from_roots(gram, labels=()) -> CoxeterDiagram:
    return CoxeterDiagram(gram, tuple(labels))


# ---------------------------------------------------------------------------
# Subdiagrams


def _components(adj):
    seen, comps = set(), []
    for v in adj:
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


def _subgram(d: CoxeterDiagram, nodes):
    return tuple(tuple(d.gram[i][j] for j in nodes) for i in nodes)


def _nonzero_components(d: CoxeterDiagram, nodes):
    """Components with respect to nonzero Gram entries (includes ultraparallel)."""
    adj = {i: {} for i in nodes}
    for i, j in combinations(nodes, 2):
        if d.gram[i][j]:
            adj[i][j] = adj[j][i] = 1
    return _components(adj)


@dataclass(frozen=True)
class SubdiagramInfo:
    kind: str  # "elliptic" | "parabolic" | "indefinite" | "degenerate"
    rank: int
    type_name: str | None

    def __str__(self):
        t = f" {self.type_name}" if self.type_name else ""
        return f"{self.kind.capitalize()}(rank {self.rank}{t})"


def type_name(d: CoxeterDiagram, nodes) -> str:
    adj = d.adjacency(nodes)
    return combine_types([connected_type({v: adj[v] for v in comp}) for comp in _components(adj)])


def classify_subdiagram(d: CoxeterDiagram, nodes) -> SubdiagramInfo:
    nodes = sorted(nodes)
    if not nodes:
        raise ValueError("empty subdiagram")
    rp, rm, r0 = ex.signature(_subgram(d, nodes))
    if rp > 0:
        return SubdiagramInfo("indefinite", rp + rm, None)
    if r0 == 0:
        return SubdiagramInfo("elliptic", rm, type_name(d, nodes))
    ncomp = len(_nonzero_components(d, nodes))
    if rm == len(nodes) - ncomp:
        return SubdiagramInfo("parabolic", rm, type_name(d, nodes))
    return SubdiagramInfo("degenerate", rm, None)


def _negdef(gram) -> bool:
    try:
        ex._cholesky_upper(tuple(tuple(-x for x in r) for r in gram))
        return True
    except ex.LinAlgError:
        return False


def elliptic_subsets(d: CoxeterDiagram, max_size: int) -> list:
    """All nonempty node sets whose Gram is negative definite, up to max_size."""
    out = []
    n = d.size

    def rec(cur, start):
        for k in range(start, n):
            nxt = cur + [k]
            if _negdef(_subgram(d, nxt)):
                out.append(tuple(nxt))
                if len(nxt) < max_size:
                    rec(nxt, k + 1)

    rec([], 0)
    return out


def affine_components(d: CoxeterDiagram, elliptic: list, max_rank: int) -> list:
    """Connected node sets with positive semidefinite corank-one Gram."""
    found = set()
    adj_all = d.adjacency()
    for s in elliptic:
        if len(s) > max_rank:
            continue
        ss = set(s)
        for x in range(d.size):
            if x in ss:
                continue
            t = tuple(sorted(ss | {x}))
            if t in found:
                continue
            sub_adj = {v: {w: l for w, l in adj_all[v].items() if w in t} for v in t}
            if len(_components(sub_adj)) != 1:
                continue
            # parallel pairs are affine A1~, ultraparallel never
            if any(d.edge(i, j).kind == "ultraparallel" for i, j in combinations(t, 2)):
                continue
            if ex.signature(_subgram(d, t)) == (0, len(t) - 1, 1):
                found.add(t)
    return sorted(found)


def parabolic_subsets(d: CoxeterDiagram, affine: list, rank: int) -> list:
    """Unions of mutually orthogonal affine components of total rank ``rank``."""
    out = []

    def orth(a, b):
        return all(d.gram[i][j] == 0 for i in a for j in b)

    def rec(start, chosen, used, r):
        if r == rank:
            out.append(tuple(sorted(used)))
            return
        for k in range(start, len(affine)):
            c = affine[k]
            if r + len(c) - 1 > rank or used & set(c):
                continue
            if all(orth(c, o) for o in chosen):
                rec(k + 1, chosen + [c], used | set(c), r + len(c) - 1)

    rec(0, [], set(), 0)
    return out


@dataclass
class VolumeCensus:
    finite: bool
    vertices: list  # (nodes, type name)
    cusps: list  # (nodes, type name)
    bad_edges: list  # elliptic rank n-1 sets without exactly two extensions

    def cusp_types(self):
        return sorted(t for _, t in self.cusps)


def finite_volume(d: CoxeterDiagram, n: int) -> VolumeCensus:
    """Vinberg's criterion for a polytope in hyperbolic n-space."""
    if d.size == 0:
        return VolumeCensus(False, [], [], [])
    ell = elliptic_subsets(d, n)
    rank_n1 = [s for s in ell if len(s) == n - 1]
    rank_n = [s for s in ell if len(s) == n]
    affine = affine_components(d, ell, n)
    para = parabolic_subsets(d, affine, n - 1)
    bad = []
    for e in rank_n1:
        es = set(e)
        count = sum(1 for s in rank_n if es <= set(s)) + sum(1 for p in para if es <= set(p))
        if count != 2:
            bad.append(e)
    finite = bool(rank_n1) and not bad
    vertices = [(s, type_name(d, s)) for s in rank_n]
    cusps = [(p, type_name(d, p)) for p in para]
    return VolumeCensus(finite, vertices, cusps, bad)


# ---------------------------------------------------------------------------
# Symmetries


def diagram_automorphisms(d: CoxeterDiagram, combinatorial: bool = False):
    """All node permutations preserving the Gram matrix (or only norms and
    edge labels when ``combinatorial``).  Returns (order, generators, elements)."""
    n = d.size

    def key(i, j):
        if i == j:
            return d.gram[i][i]
        if combinatorial:
            e = d.edge(i, j)
            return e.label() if e.kind != "ultraparallel" else "ultra"
        return d.gram[i][j]

    profile = [(key(i, i), tuple(sorted(map(str, (key(i, j) for j in range(n) if j != i)))))
               for i in range(n)]
    elements = []
    perm = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            elements.append(tuple(perm))
            return
        for c in range(n):
            if used[c] or profile[c] != profile[i]:
                continue
            if all(key(i, j) == key(c, perm[j]) for j in range(i)):
                perm[i] = c
                used[c] = True
                rec(i + 1)
                used[c] = False
        perm[i] = None

    rec(0)
    gens = _generators(elements, n)
    return len(elements), gens, elements


def multigraph_isomorphism(a, b):
    """Node map i -> perm[i] carrying multigraph ``a`` onto ``b``, or None.

    Multigraphs are (norms, {(i, j): label}) pairs as returned by
    ``CoxeterDiagram.multigraph``.
    """
    na, ea = a
    nb, eb = b
    n = len(na)
    if n != len(nb) or len(ea) != len(eb):
        return None

    def table(norms, edges):
        lab = [[None] * n for _ in range(n)]
        for (i, j), v in edges.items():
            lab[i][j] = lab[j][i] = str(v)
        return lab

    la, lb = table(na, ea), table(nb, eb)
    prof = lambda norms, lab, i: (norms[i], tuple(sorted(str(x) for x in lab[i] if x is not None)))
    pa = [prof(na, la, i) for i in range(n)]
    pb = [prof(nb, lb, i) for i in range(n)]
    if sorted(pa) != sorted(pb):
        return None
    perm = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            return True
        for c in range(n):
            if used[c] or pb[c] != pa[i]:
                continue
            if all(la[i][j] == lb[c][perm[j]] for j in range(i)):
                perm[i], used[c] = c, True
                if rec(i + 1):
                    return True
                used[c] = False
        perm[i] = None
        return False

    return tuple(perm) if rec(0) else None


def multigraph_from_data(norms, edges):
    """Multigraph from a norm list and [i, j, label] triples (1-based)."""
    out = {}
    for i, j, lab in edges:
        i, j = i - 1, j - 1
        out[(min(i, j), max(i, j))] = lab
    return (tuple(norms), out)


def compose(p, q):
    """(p o q)(i) = p[q[i]]."""
    return tuple(p[i] for i in q)


def perm_order(p):
    ident = tuple(range(len(p)))
    k, cur = 1, p
    while cur != ident:
        cur = compose(p, cur)
        k += 1
    return k


def generated(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def _generators(elements, n):
    gens = []
    span = {tuple(range(n))}
    for g in sorted(elements, key=lambda p: (-perm_order(p), p)):
        if g not in span:
            gens.append(g)
            span = generated(gens, n)
        if len(span) == len(elements):
            break
    return gens


def is_s4(elements, n) -> bool:
    """Order 24 group containing s, t with s^3 = t^2 = (st)^4 = 1 generating it."""
    if len(elements) != 24:
        return False
    threes = [g for g in elements if perm_order(g) == 3]
    twos = [g for g in elements if perm_order(g) == 2]
    for s in threes:
        for t in twos:
            if perm_order(compose(s, t)) == 4 and len(generated([s, t], n)) == 24:
                return True
    return False


# ---------------------------------------------------------------------------
# Rendering

_NORM_STYLE = {-2: "plain", -4: "halved", -8: "quartered"}


def render(d: CoxeterDiagram, fmt: str = "dot") -> str:
    if fmt == "dot":
        return _render_dot(d)
    if fmt == "ascii":
        return _render_ascii(d)
    raise ValueError(f"unknown format {fmt!r}")


def _render_dot(d: CoxeterDiagram) -> str:
    lines = ["graph coxeter {", "  node [shape=circle];"]
    for i in range(d.size):
        norm = d.gram[i][i]
        style = _NORM_STYLE.get(norm, "other")
        extra = {"plain": "", "halved": ', style="wedged", fillcolor="black:white"',
                 "quartered": ', style="wedged", fillcolor="black:white:black:white"'}.get(style, "")
        lines.append(f'  n{i} [label="{d.labels[i]}", norm={norm}, class="{style}"{extra}];')
    for i, j in combinations(range(d.size), 2):
        e = d.edge(i, j)
        if e.kind == "angle":
            if e.m == 2:
                continue
            color = {3: "black", 4: "black:black", 6: "black:black:black"}[e.m]
            lines.append(f'  n{i} -- n{j} [m={e.m}, color="{color}"];')
        elif e.kind == "parallel":
            lines.append(f"  n{i} -- n{j} [kind=parallel, penwidth=4];")
        else:
            lines.append(f'  n{i} -- n{j} [kind=ultraparallel, style=dashed, label="{e.value}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_ASCII_EDGE = {3: "---", 4: "===", 6: "≡≡≡"}


def _render_ascii(d: CoxeterDiagram) -> str:
    lines = []
    for i in range(d.size):
        lines.append(f"{d.labels[i]} [{d.gram[i][i]}] {_NORM_STYLE.get(d.gram[i][i], 'other')}")
    for i, j in combinations(range(d.size), 2):
        e = d.edge(i, j)
        if e.kind == "angle" and e.m == 2:
            continue
        if e.kind == "angle":
            mark = _ASCII_EDGE[e.m]
        elif e.kind == "parallel":
            mark = "###"
        else:
            mark = f"-.-({e.value})-.-"
        lines.append(f"{d.labels[i]} {mark} {d.labels[j]}")
    return "\n".join(lines) + ("\n" if lines else "")
