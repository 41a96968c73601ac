"""Names of connected finite and affine Coxeter diagrams.

Diagrams are given as adjacency maps ``{node: {nbr: label}}`` where a label
is the integer m >= 3 or the string ``"inf"`` for a parallel pair.  Only
crystallographic marks (3, 4, 6, inf) are named; anything else yields ``None``.
"""

from __future__ import annotations

from collections import Counter

LETTER_ORDER = "ABCDEFGHI"


def _degrees(adj):
    return {v: len(nb) for v, nb in adj.items()}


def _path_order(adj):
    """Nodes of a path graph in order, or None when adj is not a path."""
    nodes = list(adj)
    if len(nodes) == 1:
        return nodes
    deg = _degrees(adj)
    ends = [v for v in nodes if deg[v] == 1]
    if len(ends) != 2 or any(d > 2 for d in deg.values()):
        return None
    order, prev, cur = [ends[0]], None, ends[0]
    while len(order) < len(nodes):
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return None
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def _is_tree(adj):
    edges = sum(len(nb) for nb in adj.values()) // 2
    return edges == len(adj) - 1


def _branch_lengths(adj, center):
    out = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if len(nxt) == 0:
                break
            if len(nxt) > 1:
                return None
            prev, cur = cur, nxt[0]
            length += 1
        out.append(length)
    return sorted(out)


def connected_type(adj) -> tuple | None:
    """(letter, rank, affine) for a connected diagram, or None."""
    n = len(adj)
    labels = Counter(lab for v in adj for lab in adj[v].values())
    labels = {k: c // 2 for k, c in labels.items()}
    if n == 1:
        return ("A", 1, False)
    if labels.get("inf"):
        if n == 2 and labels["inf"] == 1:
            return ("A", 1, True)
        return None
    heavy = {k: c for k, c in labels.items() if k != 3}
    path = _path_order(adj)
    if not _is_tree(adj):
        deg = _degrees(adj)
        if not heavy and all(d == 2 for d in deg.values()):
            return ("A", n - 1, True)
        return None
    deg = _degrees(adj)
    branch = [v for v in adj if deg[v] >= 3]
    if path is not None:
        marks = [adj[path[k]][path[k + 1]] for k in range(n - 1)]
        if not heavy:
            return ("A", n, False)
        if heavy == {4: 1}:
            pos = marks.index(4)
            if pos in (0, n - 2):
                return ("B", n, False)
            if n == 4 and pos == 1:
                return ("F", 4, False)
            if n == 5 and pos in (1, 2):
                return ("F", 4, True)
            return None
        if heavy == {4: 2} and marks[0] == 4 and marks[-1] == 4:
            # C~2 is written B~2, matching the usual labelling of this family
            return ("B", 2, True) if n == 3 else ("C", n - 1, True)
        if heavy == {6: 1}:
            if n == 2:
                return ("G", 2, False)
            if n == 3:
                return ("G", 2, True)
        return None
    if len(branch) == 1:
        c = branch[0]
        lens = _branch_lengths(adj, c)
        if lens is None:
            return None
        if deg[c] == 4 and lens == [1, 1, 1, 1] and not heavy:
            return ("D", 4, True)
        if deg[c] != 3:
            return None
        if not heavy:
            if lens[0] == 1 and lens[1] == 1:
                return ("D", n, False)
            if lens == [1, 2, 2]:
                return ("E", 6, False)
            if lens == [1, 2, 3]:
                return ("E", 7, False)
            if lens == [1, 2, 4]:
                return ("E", 8, False)
            if lens == [2, 2, 2]:
                return ("E", 6, True)
            if lens == [1, 3, 3]:
                return ("E", 7, True)
            if lens == [1, 2, 5]:
                return ("E", 8, True)
            return None
        if heavy == {4: 1} and lens[0] == 1 and lens[1] == 1:
            # double edge must sit at the far end of the long branch
            far = _far_end_mark(adj, c)
            if far == 4:
                return ("B", n - 1, True)
        return None
    if len(branch) == 2 and not heavy:
        if all(deg[b] == 3 for b in branch):
            leaves_ok = all(sum(1 for w in adj[b] if deg[w] == 1) == 2 for b in branch)
            if leaves_ok:
                return ("D", n - 1, True)
    return None


def _far_end_mark(adj, center):
    """Last mark along the branch carrying the double edge, provided that
    branch is a longest one; None otherwise."""
    branches = []
    for start in adj[center]:
        marks, prev, cur = [adj[center][start]], center, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            marks.append(adj[cur][nxt[0]])
            prev, cur = cur, nxt[0]
        branches.append(marks)
    longest = max(len(m) for m in branches)
    for marks in branches:
        if 4 in marks:
            return marks[-1] if len(marks) == longest else None
    return None


def type_string(t: tuple) -> str:
    letter, rank, affine = t
    return f"{letter}{rank}{'~' if affine else ''}"


def combine_types(parts) -> str:
    """Canonical product name, e.g. ``A1^2 D4`` for [A1, D4, A1]."""
    if not parts:
        return "1"
    if any(p is None for p in parts):
        return "?"
    counts = Counter(parts)
    keys = sorted(counts, key=lambda t: (LETTER_ORDER.index(t[0]), t[1], t[2]))
    out = []
    for k in keys:
        s = type_string(k)
        out.append(s if counts[k] == 1 else f"{s}^{counts[k]}")
    return " ".join(out)


def parse_type(name: str) -> Counter:
    """Multiset of component names from ``combine_types`` output."""
    out = Counter()
    if name == "1":
        return out
    for part in name.split():
        base, _, k = part.partition("^")
        out[base] += int(k) if k else 1
    return out
