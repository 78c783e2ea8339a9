"""Triangulations over (augmented) point sets, with edge flips.

The representation is a triangle soup with derived adjacency: each
triangulation stores its vertex-index triples in CCW order, in a
canonical sorted form, plus a reference to the underlying point
container.  Flips return new values; nothing is mutated.

The canonical fingerprint is the SHA-256 of the sorted edge list (two
bytes per index, little endian).  Deduplication during enumeration
compares full edge sets on fingerprint collisions, so correctness never
depends on hash quality.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .errors import NotFlippableError, UnknownEdgeError
from .geometry import (
    CCW,
    AugmentedPointSet,
    Point,
    orient,
    point_in_triangle,
    segments_cross,
)

BOUNDARY = -1

# An edge is an index pair (i, j) with i < j.
EdgeRef = tuple[int, int]

Tri = tuple[int, int, int]


def edge(i: int, j: int) -> EdgeRef:
    return (i, j) if i < j else (j, i)


def _canon_tri(a: int, b: int, c: int) -> Tri:
    """Rotate a CCW triple so the smallest index comes first."""
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


def canonical_triangles(tris) -> tuple[Tri, ...]:
    return tuple(sorted(_canon_tri(*t) for t in tris))


def edges_of(tris) -> list[EdgeRef]:
    es = set()
    for a, b, c in tris:
        es.add(edge(a, b))
        es.add(edge(b, c))
        es.add(edge(c, a))
    return sorted(es)


def edge_apex_map(tris) -> dict[EdgeRef, list[int]]:
    """For each edge, the apexes of its incident triangles (1 or 2)."""
    m: dict[EdgeRef, list[int]] = {}
    for a, b, c in tris:
        m.setdefault(edge(a, b), []).append(c)
        m.setdefault(edge(b, c), []).append(a)
        m.setdefault(edge(c, a), []).append(b)
    return m


def fingerprint_bytes(tris, _hash=hashlib.sha256) -> bytes:
    """Stable 16-byte digest of the canonical edge list."""
    raw = bytearray()
    for i, j in edges_of(tris):
        raw += i.to_bytes(2, "little")
        raw += j.to_bytes(2, "little")
    return _hash(bytes(raw)).digest()[:16]


@dataclass(frozen=True)
class DegreeVector:
    """Interior degree histogram plus the three frame-vertex degrees."""

    v: dict[int, int]
    frame_degrees: tuple[int, int, int]

    def interior_total(self) -> int:
        return sum(self.v.values())

    def weighted_sum(self) -> int:
        return sum(i * c for i, c in self.v.items())


class Triangulation:
    """Immutable triangulation of a point container.

    ``vertices`` is the PointSet or AugmentedPointSet the index triples
    refer to.  ``triangles`` is the canonical sorted tuple of CCW
    triples.
    """

    __slots__ = ("vertices", "triangles", "_edges", "_apexes", "_fp")

    def __init__(self, vertices, triangles, check: bool = False):
        self.vertices = vertices
        self.triangles = canonical_triangles(triangles)
        self._edges = None
        self._apexes = None
        self._fp = None
        if check:
            self.validate()

    @property
    def points(self) -> tuple[Point, ...]:
        return self.vertices.points

    @property
    def edge_set(self) -> tuple[EdgeRef, ...]:
        if self._edges is None:
            self._edges = tuple(edges_of(self.triangles))
        return self._edges

    @property
    def apex_map(self) -> dict[EdgeRef, list[int]]:
        if self._apexes is None:
            self._apexes = edge_apex_map(self.triangles)
        return self._apexes

    def adjacency(self) -> dict[tuple[int, int], int]:
        """(triangle index, edge slot) -> opposite triangle index or BOUNDARY.

        Edge slot e covers the edge from vertex e to vertex (e+1) % 3.
        """
        owner: dict[EdgeRef, list[int]] = {}
        for ti, (a, b, c) in enumerate(self.triangles):
            for u, v in ((a, b), (b, c), (c, a)):
                owner.setdefault(edge(u, v), []).append(ti)
        adj = {}
        for ti, (a, b, c) in enumerate(self.triangles):
            for slot, (u, v) in enumerate(((a, b), (b, c), (c, a))):
                tis = owner[edge(u, v)]
                other = [t for t in tis if t != ti]
                adj[(ti, slot)] = other[0] if other else BOUNDARY
        return adj

    def fingerprint(self) -> str:
        if self._fp is None:
            self._fp = fingerprint_bytes(self.triangles).hex()
        return self._fp

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Triangulation)
            and self.vertices.points == other.vertices.points
            and self.edge_set == other.edge_set
        )

    def __hash__(self) -> int:
        return hash((self.vertices.points, self.edge_set))

    def __repr__(self) -> str:
        return f"Triangulation({len(self.triangles)} triangles, fp={self.fingerprint()[:8]})"

    # --- flips ---

    def is_flippable(self, e: EdgeRef) -> bool:
        e = edge(*e)
        apexes = self.apex_map.get(e)
        if apexes is None:
            raise UnknownEdgeError(f"edge {e} not in triangulation")
        if len(apexes) < 2:
            return False
        x, y = apexes
        u, v = e
        pts = self.points
        # The quad is strictly convex iff the candidate diagonal xy
        # properly crosses uv.
        return segments_cross(pts[x], pts[y], pts[u], pts[v])

    def flip(self, e: EdgeRef) -> "Triangulation":
        e = edge(*e)
        if not self.is_flippable(e):
            raise NotFlippableError(f"edge {e} cannot be flipped")
        u, v = e
        x, y = self.apex_map[e]
        pts = self.points
        new = [t for t in self.triangles if not ({u, v} <= set(t))]
        new.append(_ccw(pts, x, y, u))
        new.append(_ccw(pts, x, y, v))
        return Triangulation(self.vertices, new)

    def flippable_edges(self) -> list[EdgeRef]:
        return [e for e in self.edge_set if self.is_flippable(e)]

    # --- structure queries ---

    def degree_map(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for i, j in self.edge_set:
            deg[i] = deg.get(i, 0) + 1
            deg[j] = deg.get(j, 0) + 1
        return deg

    def link_cycle(self, p: int) -> list[int]:
        """Neighbours of interior vertex p in CCW order around p."""
        succ: dict[int, int] = {}
        for t in self.triangles:
            if p in t:
                # rotated CCW triple (p, x, y): y follows x around p
                _, x, y = _rotate_to(t, p)
                succ[x] = y
        start = next(iter(succ))
        cycle = [start]
        cur = succ.get(start)
        while cur is not None and cur != start:
            cycle.append(cur)
            cur = succ.get(cur)
        if cur != start or len(cycle) != len(succ):
            raise ValueError(f"vertex {p} is not interior")
        return cycle

    # --- invariants ---

    def validate(self) -> None:
        pts = self.points
        for t in self.triangles:
            if orient(pts[t[0]], pts[t[1]], pts[t[2]]) != CCW:
                raise ValueError(f"triangle {t} is not CCW")
        # Every edge borders one or two triangles; consistency of the
        # adjacency involution is implied by the apex map cardinality.
        for e, apexes in self.apex_map.items():
            if len(apexes) > 2:
                raise ValueError(f"edge {e} borders {len(apexes)} triangles")
        # Exact area audit: interior-disjoint CCW triangles covering the
        # hull must sum to the hull area.
        if isinstance(self.vertices, AugmentedPointSet):
            hull = [len(pts) - 3 + i for i in range(3)]
            hull_pts = [pts[i] for i in self.vertices.frame_indices()]
        else:
            hull = list(self.vertices.convex_hull_indices())
            hull_pts = [pts[i] for i in hull]
        hull_area = _poly_area_2x(hull_pts)
        tri_area = sum(_poly_area_2x([pts[a], pts[b], pts[c]]) for a, b, c in self.triangles)
        if tri_area != hull_area:
            raise ValueError("triangles do not tile the hull")
        n_all = len(pts)
        expected_edges = 3 * n_all - 3 - len(hull)
        if len(self.edge_set) != expected_edges:
            raise ValueError(
                f"edge count {len(self.edge_set)} != {expected_edges}"
            )

    def to_json(self) -> str:
        return json.dumps(
            {"n": len(self.points), "edges": [list(e) for e in self.edge_set]},
            separators=(",", ":"),
        )


def _rotate_to(t: Tri, p: int) -> Tri:
    a, b, c = t
    if a == p:
        return (a, b, c)
    if b == p:
        return (b, c, a)
    return (c, a, b)


def _ccw(pts, a: int, b: int, c: int) -> Tri:
    if orient(pts[a], pts[b], pts[c]) == CCW:
        return (a, b, c)
    return (a, c, b)


def _poly_area_2x(poly: list[Point]) -> int:
    k = len(poly)
    return sum(
        poly[i].x * poly[(i + 1) % k].y - poly[(i + 1) % k].x * poly[i].y
        for i in range(k)
    )


def is_flippable(t: Triangulation, e: EdgeRef) -> bool:
    return t.is_flippable(e)


def flip(t: Triangulation, e: EdgeRef) -> Triangulation:
    return t.flip(e)


def fingerprint(t: Triangulation) -> str:
    return t.fingerprint()


def degree_vector(t: Triangulation) -> DegreeVector:
    """Interior degree histogram and frame degrees for an S+ triangulation."""
    if not isinstance(t.vertices, AugmentedPointSet):
        raise TypeError("degree_vector is defined over an AugmentedPointSet")
    deg = t.degree_map()
    fi = t.vertices.frame_indices()
    v: dict[int, int] = {}
    for p in t.vertices.interior_indices():
        d = deg[p]
        v[d] = v.get(d, 0) + 1
    return DegreeVector(v=v, frame_degrees=tuple(deg[i] for i in fi))


def initial_triangulation(container) -> Triangulation:
    """Any valid seed triangulation, by incremental insertion.

    For an AugmentedPointSet the frame triangle is split repeatedly; for
    a plain PointSet the hull is fanned first, then interior points are
    inserted.
    """
    pts = container.points
    if isinstance(container, AugmentedPointSet):
        f0, f1, f2 = container.frame_indices()
        tris: list[Tri] = [_ccw(pts, f0, f1, f2)]
        pending = list(container.interior_indices())
    else:
        hull = list(container.convex_hull_indices())
        if len(hull) < 3:
            raise ValueError("point set has no interior: need >= 3 points")
        tris = [
            _ccw(pts, hull[0], hull[i], hull[i + 1]) for i in range(1, len(hull) - 1)
        ]
        on_hull = set(hull)
        pending = [i for i in range(len(pts)) if i not in on_hull]
    for p in pending:
        for idx, (a, b, c) in enumerate(tris):
            if point_in_triangle(pts[p], pts[a], pts[b], pts[c]):
                tris[idx : idx + 1] = [
                    _ccw(pts, a, b, p),
                    _ccw(pts, b, c, p),
                    _ccw(pts, c, a, p),
                ]
                break
        else:
            raise ValueError(f"point {p} not inside any triangle")
    return Triangulation(container, tris, check=True)
