"""Exhaustive enumeration of triangulations by flip-graph traversal.

Every triangulation of a point set can be reached from any other by
edge flips, so a breadth-first walk over the flip graph with canonical
deduplication visits each one exactly once.  Counts and degree totals
are exact integers; expected degrees come out as exact rationals.

The traversal works on raw canonical triangle tuples for speed; the
``Triangulation`` class is only materialized at API boundaries.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterator

from .errors import CapExceededError
from .geometry import AugmentedPointSet
from .triangulation import (
    Tri,
    canonical_triangles,
    edges_of,
    fingerprint_bytes,
    initial_triangulation,
)


# BFS frontier prefix length kept before compaction.
PREFIX_DROP = 65536


@dataclass
class EnumerationStats:
    wall_time: float = 0.0
    frontier_peak: int = 0


@dataclass
class EnumerationResult:
    """Outcome of a flip-graph enumeration.

    ``degree_totals[i]`` sums v_i(T) over all visited triangulations,
    counting interior (non-hull) vertices only.
    """

    count: int
    interior_count: int
    degree_totals: dict[int, int]
    exhaustive: bool
    fingerprints: list[str] | None = None
    stats: EnumerationStats = field(default_factory=EnumerationStats)

    def vhat(self, i: int) -> Fraction:
        return Fraction(self.degree_totals.get(i, 0), self.count)


def _interior_indices(container) -> list[int]:
    if isinstance(container, AugmentedPointSet):
        return list(container.interior_indices())
    hull = set(container.convex_hull_indices())
    return [i for i in range(len(container.points)) if i not in hull]


def flip_graph_states(
    container,
    cap: int | None = None,
    order: str = "bfs",
    stats: EnumerationStats | None = None,
    _hash=None,
) -> Iterator[tuple[Tri, ...]]:
    """Yield every triangulation of the container as a canonical triangle
    tuple, each exactly once.  Raises CapExceededError after yielding
    ``cap`` states.

    ``order`` switches between BFS and DFS expansion; the visited set is
    identical either way.  ``_hash`` overrides the fingerprint hash (used
    by tests to force collisions).
    """
    pts = container.points
    xy = [(p.x, p.y) for p in pts]
    seed = initial_triangulation(container).triangles
    n_all = len(pts)
    hull_size = 3 if isinstance(container, AugmentedPointSet) else len(
        container.convex_hull_indices()
    )
    expected_edges = 3 * n_all - 3 - hull_size
    expected_tris = 2 * n_all - 2 - hull_size

    fp_kwargs = {} if _hash is None else {"_hash": _hash}

    def pack(tris) -> bytes:
        raw = bytearray()
        for i, j in edges_of(tris):
            raw += i.to_bytes(2, "little")
            raw += j.to_bytes(2, "little")
        return bytes(raw)

    visited: dict[bytes, list[bytes]] = {}

    def admit(tris) -> bool:
        fp = fingerprint_bytes(tris, **fp_kwargs)
        packed = pack(tris)
        bucket = visited.get(fp)
        if bucket is None:
            visited[fp] = [packed]
            return True
        if packed in bucket:
            return False
        bucket.append(packed)
        return True

    frontier: list[tuple[Tri, ...]] = [seed]
    admit(seed)
    head = 0
    yielded = 0
    while True:
        if order == "bfs":
            if head >= len(frontier):
                break
            state = frontier[head]
            head += 1
            if head >= PREFIX_DROP:
                # Drop the consumed prefix to bound memory.
                frontier = frontier[head:]
                head = 0
        else:
            if not frontier:
                break
            state = frontier.pop()
        if len(state) != expected_tris or len(edges_of(state)) != expected_edges:
            raise AssertionError("Euler count violated during enumeration")
        yield state
        yielded += 1
        if cap is not None and yielded >= cap:
            raise CapExceededError(f"enumeration cap {cap} reached")
        for nxt in _neighbors(xy, state):
            if admit(nxt):
                frontier.append(nxt)
        if stats is not None:
            stats.frontier_peak = max(stats.frontier_peak, len(frontier) - head)


def _neighbors(xy, tris) -> list[tuple[Tri, ...]]:
    amap: dict[tuple[int, int], list[int]] = {}
    for a, b, c in tris:
        for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
            key = (u, v) if u < v else (v, u)
            amap.setdefault(key, []).append(w)
    out = []
    for (u, v), apexes in amap.items():
        if len(apexes) != 2:
            continue
        x, y = apexes
        ax, ay = xy[x]
        bx, by = xy[y]
        ux, uy = xy[u]
        vx, vy = xy[v]
        # Proper crossing of candidate diagonal xy with uv.
        o1 = (bx - ax) * (uy - ay) - (by - ay) * (ux - ax)
        o2 = (bx - ax) * (vy - ay) - (by - ay) * (vx - ax)
        if o1 == 0 or o2 == 0 or (o1 > 0) == (o2 > 0):
            continue
        o3 = (vx - ux) * (ay - uy) - (vy - uy) * (ax - ux)
        o4 = (vx - ux) * (by - uy) - (vy - uy) * (bx - ux)
        if o3 == 0 or o4 == 0 or (o3 > 0) == (o4 > 0):
            continue
        keep = [t for t in tris if not (u in t and v in t)]
        # o1 = orient(x, y, u) and o2 = orient(x, y, v) fix the CCW order.
        keep.append((x, y, u) if o1 > 0 else (x, u, y))
        keep.append((x, y, v) if o2 > 0 else (x, v, y))
        out.append(canonical_triangles(keep))
    return out


def enumerate_all(
    container,
    cap: int | None = None,
    collect_fingerprints: bool = False,
    order: str = "bfs",
) -> EnumerationResult:
    """Count all triangulations and accumulate interior degree totals.

    On hitting ``cap`` the partial result is attached to the raised
    CapExceededError, flagged non-exhaustive.
    """
    interior = _interior_indices(container)
    n_all = len(container.points)
    stats = EnumerationStats()
    t0 = time.perf_counter()
    count = 0
    degree_totals: dict[int, int] = {}
    fps: list[str] | None = [] if collect_fingerprints else None

    def build(exhaustive: bool) -> EnumerationResult:
        stats.wall_time = time.perf_counter() - t0
        return EnumerationResult(
            count=count,
            interior_count=len(interior),
            degree_totals=dict(sorted(degree_totals.items())),
            exhaustive=exhaustive,
            fingerprints=fps,
            stats=stats,
        )

    deg = [0] * n_all
    gen = flip_graph_states(container, cap=cap, order=order, stats=stats)
    try:
        for state in gen:
            count += 1
            for i in range(n_all):
                deg[i] = 0
            for i, j in edges_of(state):
                deg[i] += 1
                deg[j] += 1
            for p in interior:
                d = deg[p]
                degree_totals[d] = degree_totals.get(d, 0) + 1
            if fps is not None:
                fps.append(fingerprint_bytes(state).hex())
    except CapExceededError as exc:
        exc.result = build(False)
        raise
    return build(True)


def vhat(container, i: int) -> Fraction:
    """Expected number of interior degree-i vertices, as an exact rational."""
    return enumerate_all(container).vhat(i)


@dataclass
class V3RecursionReport:
    """Both sides of the degree-3 insertion identity.

    lhs sums v_3 over all triangulations of the full set; rhs sums the
    triangulation counts of the sets with one interior point deleted.
    """

    lhs: int
    rhs: int
    per_point: dict[int, int]

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def check_v3_recursion(P: AugmentedPointSet) -> V3RecursionReport:
    if not isinstance(P, AugmentedPointSet):
        raise TypeError("check_v3_recursion needs an AugmentedPointSet")
    full = enumerate_all(P)
    lhs = full.degree_totals.get(3, 0)
    per_point = {}
    for q in P.interior_indices():
        per_point[q] = enumerate_all(P.without(q)).count
    return V3RecursionReport(lhs=lhs, rhs=sum(per_point.values()), per_point=per_point)


def tri_upper_bound(n: int, delta: Fraction) -> int:
    """ceil((1/delta)^n): the triangulation-count bound implied by an
    expected-degree-3 density of delta."""
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise ValueError("delta must be in (0, 1]")
    if n < 0:
        raise ValueError("n must be >= 0")
    return ceil((1 / delta) ** n)
