"""Vinberg's algorithm for hyperbolic lattices of signature (1, n).

Heights are ordered by (r, p)^2 / -(r, r); twice this value is also reported.
Candidates for a fixed inner product c = (r, p) and norm -k are the integral
points of a coset of p^perp, enumerated exactly.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import exact as ex
from . import zlattice as zl
from .coxeter.diagram import CoxeterDiagram, VolumeCensus, finite_volume


class VinbergError(ValueError):
    pass


FINISHED = "finished"
HEIGHT_CAPPED = "height_capped"
RUNNING = "running"


def crystallographic_check(lat: zl.ZLattice, r: Sequence[int]) -> bool:
    """Reflection in r preserves L, i.e. 2 (r, x) lies in (r, r) Z for all x."""
    r = tuple(r)
    if ex.vec_gcd(r) != 1:
        raise VinbergError("vector is not primitive")
    rr = lat.norm(r)
    if rr >= 0:
        raise VinbergError("root must have negative norm")
    return all((2 * x) % rr == 0 for x in ex.mat_vec(lat.gram, r))


def default_allowed_norms(lat: zl.ZLattice) -> list:
    """Even k dividing 2 * exponent(A_L).

    For a primitive crystallographic r of norm -k the class of 2r/k in
    L^dual/L has order exactly k/2, so k/2 must divide the exponent.
    """
    if not lat.is_even:
        raise VinbergError("lattice must be even")
    e = zl.discriminant_exponent(lat)
    return [k for k in range(2, 2 * e + 1, 2) if (2 * e) % k == 0]


@dataclass
class VinbergConfig:
    lattice: zl.ZLattice
    controller: tuple
    allowed_norms: tuple | None = None
    predicate: Callable | None = None
    max_height: Fraction | None = None
    ordering: tuple | None = None  # rows: functionals for height-0 positivity

    def __post_init__(self):
        self.controller = tuple(self.controller)
        if self.allowed_norms is None:
            self.allowed_norms = tuple(default_allowed_norms(self.lattice))
        self.allowed_norms = tuple(sorted(set(int(k) for k in self.allowed_norms)))
        if not self.allowed_norms or any(k <= 0 or k % 2 for k in self.allowed_norms):
            raise VinbergError("allowed norms must be positive even integers")
        if self.lattice.norm(self.controller) <= 0:
            raise VinbergError("controlling vector must have positive norm")
        if self.max_height is not None:
            self.max_height = Fraction(self.max_height)


@dataclass
class VinbergRun:
    roots: list = field(default_factory=list)
    heights: list = field(default_factory=list)  # table convention
    status: str = RUNNING
    diagram: CoxeterDiagram | None = None
    census: VolumeCensus | None = None
    config: VinbergConfig | None = None

    @property
    def prose_heights(self):
        return [2 * h for h in self.heights]

    def by_height(self) -> dict:
        out = {}
        for r, h in zip(self.roots, self.heights):
            out.setdefault(h, []).append(r)
        return out

    def gram(self):
        lat = self.config.lattice
        return tuple(tuple(lat.ip(a, b) for b in self.roots) for a in self.roots)


def _positive(key) -> bool:
    for x in key:
        if x:
            return x > 0
    return False


def height_zero_roots(cfg: VinbergConfig, slab: zl.SlabEnumerator) -> list:
    lat = cfg.lattice
    out = []
    for k in cfg.allowed_norms:
        for r in slab.vectors(0, -k):
            if _accept_candidate(lat, r, cfg.predicate):
                out.append(r)
    return out


def _accept_candidate(lat, r, predicate) -> bool:
    if ex.vec_gcd(r) != 1:
        return False
    if not crystallographic_check(lat, r):
        return False
    return predicate is None or bool(predicate(r))


def simple_height_zero(cfg: VinbergConfig, roots: list) -> list:
    """Simple roots of the finite root system orthogonal to p, positive for the
    lexicographic order of (ordering * r)."""
    t = cfg.ordering
    key = (lambda r: ex.mat_vec(t, r)) if t is not None else (lambda r: r)
    pos = [r for r in roots if _positive(key(r))]
    if len(pos) * 2 != len(roots):
        raise VinbergError("ordering is not generic on the height-0 roots")
    pos_set = set(pos)
    simple = []
    for r in pos:
        decomposable = any(tuple(a - b for a, b in zip(r, s)) in pos_set for s in pos if s != r)
        if not decomposable:
            simple.append(r)
    simple.sort(key=lambda r: tuple(key(r)), reverse=True)
    lat = cfg.lattice
    for a in simple:
        for b in simple:
            if a != b and lat.ip(a, b) < 0:
                raise VinbergError("height-0 simple system is not obtuse")
    return simple


def _height_stream(cfg: VinbergConfig, step: int):
    """(height, c, k) with c > 0 a multiple of ``step`` and k allowed, by
    increasing c^2 / k; ties by norm then c."""
    heap = []
    for k in cfg.allowed_norms:
        heapq.heappush(heap, (Fraction(step * step, k), k, step))
    while heap:
        h, k, c = heapq.heappop(heap)
        heapq.heappush(heap, (Fraction((c + step) ** 2, k), k, c + step))
        yield h, c, k


def run_vinberg(cfg: VinbergConfig, max_roots: int = 200) -> VinbergRun:
    lat = cfg.lattice
    rp, rm = lat.signature()
    if rp != 1 or rm < 2:
        raise VinbergError("lattice must have signature (1, n) with n >= 2")
    n = rm
    p = cfg.controller
    slab = zl.SlabEnumerator(lat, p)
    run = VinbergRun(config=cfg)
    simple0 = simple_height_zero(cfg, height_zero_roots(cfg, slab))
    for r in simple0:
        run.roots.append(r)
        run.heights.append(Fraction(0))

    def check_done():
        d = CoxeterDiagram(run.gram())
        run.diagram = d
        if len(run.roots) >= n:
            census = finite_volume(d, n)
            run.census = census
            return census.finite
        return False

    if check_done():
        run.status = FINISHED
        return run
    for h, c, k in _height_stream(cfg, slab.step):
        if cfg.max_height is not None and h > cfg.max_height:
            run.status = HEIGHT_CAPPED
            return run
        if (2 * c) % k:
            continue  # crystallographic: 2 (r, p) must lie in kZ
        level_start = _level_start(run, h)
        for r in slab.vectors(c, -k):
            if not _accept_candidate(lat, r, cfg.predicate):
                continue
            lower = run.roots[:level_start]
            if any(lat.ip(r, s) < 0 for s in lower):
                continue
            same = run.roots[level_start:]
            if any(lat.ip(r, s) < 0 for s in same):
                raise VinbergError("roots of equal height with obtuse pairing")
            run.roots.append(r)
            run.heights.append(h)
            if check_done():
                run.status = FINISHED
                return run
            if len(run.roots) > max_roots:
                raise VinbergError("too many roots; the group may have infinite covolume")
    return run


def _level_start(run: VinbergRun, h) -> int:
    k = len(run.heights)
    while k > 0 and run.heights[k - 1] == h:
        k -= 1
    return k
