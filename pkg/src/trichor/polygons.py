"""Exact triangulation counting for simple polygons.

Covers the counting layer the charging analysis rests on: the interval
DP over valid diagonals, a brute-force ear-splitting oracle, counts
constrained to contain given chords, and the Catalan family C_m, C'_n,
C''_n, C^(r)_n for convex polygons with minimally-blocking reflex
vertices.

All counts are exact Python integers.  Vertex visibility is decided by
exact predicates: two vertices see each other iff the open segment
between them stays strictly inside the polygon; grazing a third vertex
counts as blocked.
"""

from __future__ import annotations

from math import comb
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    CrossingChordsError,
    InvalidChordError,
    NotSimpleError,
    OutOfRangeError,
    TooLargeError,
)
from .geometry import (
    CCW,
    Point,
    orient,
    point_on_open_segment,
    segments_cross,
)

BRUTE_FORCE_LIMIT = 12


def catalan(m: int) -> int:
    """The m-th Catalan number, binom(2m, m) / (m + 1)."""
    if m < 0:
        raise OutOfRangeError(f"catalan index must be >= 0, got {m}")
    return comb(2 * m, m) // (m + 1)


def catalan_generalized(n: int, r: int) -> int:
    """Triangulation count of an almost-convex polygon with r blocking
    reflex vertices: sum_i (-1)^i binom(r, i) C_{n-i}.

    C^(0) is the plain Catalan number, C^(1) = C', C^(2) = C''.
    """
    if r < 0 or n < 0:
        raise OutOfRangeError(f"need n, r >= 0, got n={n}, r={r}")
    if 2 * r > n:
        raise OutOfRangeError(f"need r <= n/2, got n={n}, r={r}")
    return sum((-1) ** i * comb(r, i) * catalan(n - i) for i in range(r + 1))


class SimplePolygon:
    """A simple polygon given by its boundary in CCW order.

    An optional kernel witness asserts star-shapedness: construction
    checks that every boundary edge has the witness strictly on its
    left, i.e. the witness lies in the polygon's kernel.
    """

    __slots__ = ("boundary", "kernel_witness", "_sees_cache")

    def __init__(
        self,
        boundary: Iterable[Point | tuple[int, int]],
        kernel_witness: Point | None = None,
        _skip_checks: bool = False,
    ):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in boundary)
        if len(pts) < 3:
            raise NotSimpleError(f"polygon needs >= 3 vertices, got {len(pts)}")
        if not _skip_checks:
            if _signed_area_2x(pts) < 0:
                pts = tuple(reversed(pts))
            _check_simple(pts)
        self.boundary = pts
        self.kernel_witness = kernel_witness
        self._sees_cache: dict[tuple[int, int], bool] = {}
        if kernel_witness is not None:
            k = len(pts)
            for i in range(k):
                if orient(pts[i], pts[(i + 1) % k], kernel_witness) != CCW:
                    raise NotSimpleError(
                        f"kernel witness is not strictly left of edge {i}"
                    )

    def __len__(self) -> int:
        return len(self.boundary)

    def __repr__(self) -> str:
        return f"SimplePolygon({len(self.boundary)} vertices)"

    def is_convex(self) -> bool:
        k = len(self.boundary)
        return all(
            orient(self.boundary[i], self.boundary[(i + 1) % k], self.boundary[(i + 2) % k]) == CCW
            for i in range(k)
        )

    def contains_point(self, p: Point) -> bool:
        """Strict interior test (exact ray crossing)."""
        return _point_strictly_inside(p, self.boundary)

    def sees(self, i: int, j: int) -> bool:
        """True iff boundary vertices i and j see each other.

        Adjacent vertices do not "see" each other in this sense; use the
        boundary edge directly.  The open segment must avoid all other
        vertices, cross no boundary edge, and run through the interior.
        """
        k = len(self.boundary)
        i %= k
        j %= k
        if i == j or (i + 1) % k == j or (j + 1) % k == i:
            return False
        key = (i, j) if i < j else (j, i)
        hit = self._sees_cache.get(key)
        if hit is None:
            hit = self._sees_cache[key] = self._sees(i, j)
        return hit

    def _sees(self, i: int, j: int) -> bool:
        pts = self.boundary
        k = len(pts)
        a, b = pts[i], pts[j]
        for w in range(k):
            if w != i and w != j and point_on_open_segment(pts[w], a, b):
                return False
        for u in range(k):
            v = (u + 1) % k
            if u in (i, j) or v in (i, j):
                continue
            if segments_cross(a, b, pts[u], pts[v]):
                return False
        # Doubled midpoint keeps the inside test in exact integers.
        mid = Point(a.x + b.x, a.y + b.y)
        doubled = tuple(Point(2 * p.x, 2 * p.y) for p in pts)
        return _point_strictly_inside(mid, doubled)


def _signed_area_2x(pts: Sequence[Point]) -> int:
    k = len(pts)
    return sum(
        pts[i].x * pts[(i + 1) % k].y - pts[(i + 1) % k].x * pts[i].y for i in range(k)
    )


def _check_simple(pts: Sequence[Point]) -> None:
    k = len(pts)
    seen = {}
    for idx, p in enumerate(pts):
        if (p.x, p.y) in seen:
            raise NotSimpleError(f"repeated boundary vertex at {idx}")
        seen[(p.x, p.y)] = idx
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        for j in range(i + 1, k):
            c, d = pts[j], pts[(j + 1) % k]
            if j == i or (j + 1) % k == i or (i + 1) % k == j:
                # Adjacent edges may only touch at the shared vertex.
                shared = {(a.x, a.y), (b.x, b.y)} & {(c.x, c.y), (d.x, d.y)}
                if shared:
                    others = [
                        (p, q, r)
                        for p, q, r in ((c, d, a), (c, d, b), (a, b, c), (a, b, d))
                        if (r.x, r.y) not in shared
                    ]
                    if any(point_on_open_segment(r, p, q) for p, q, r in others):
                        raise NotSimpleError(f"edges {i} and {j} overlap")
                    continue
            if segments_cross(a, b, c, d):
                raise NotSimpleError(f"edges {i} and {j} cross")
            for p, q, r in ((a, b, c), (a, b, d), (c, d, a), (c, d, b)):
                if point_on_open_segment(r, p, q):
                    raise NotSimpleError(f"edges {i} and {j} touch")


def _point_strictly_inside(q: Point, pts: Sequence[Point]) -> bool:
    k = len(pts)
    inside = False
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        if point_on_open_segment(q, a, b) or (q.x, q.y) in ((a.x, a.y), (b.x, b.y)):
            return False
        if (a.y > q.y) != (b.y > q.y):
            # x coordinate of the edge at height q.y, compared exactly:
            # q.x < a.x + (q.y - a.y) (b.x - a.x) / (b.y - a.y)
            lhs = (q.x - a.x) * (b.y - a.y)
            rhs = (q.y - a.y) * (b.x - a.x)
            if (b.y > a.y and lhs < rhs) or (b.y < a.y and lhs > rhs):
                inside = not inside
    return inside


def _closable(poly: SimplePolygon, i: int, j: int) -> bool:
    """Edge-or-diagonal test used by the counting recursions."""
    k = len(poly)
    if (i + 1) % k == j or (j + 1) % k == i:
        return True
    return poly.sees(i, j)


def count_triangulations(poly: SimplePolygon) -> int:
    """Exact number of triangulations of a simple polygon.

    Interval DP over the boundary: ways(i, j) counts triangulations of
    the sub-polygon cut off by chord (i, j), built by choosing the apex
    of the triangle resting on that chord.
    """
    k = len(poly)
    if k == 3:
        return 1
    ways: dict[tuple[int, int], int] = {}
    for i in range(k - 1):
        ways[(i, i + 1)] = 1
    for span in range(2, k):
        for i in range(k - span):
            j = i + span
            total = 0
            if _closable(poly, i, j):
                for m in range(i + 1, j):
                    if _closable(poly, i, m) and _closable(poly, m, j):
                        total += ways[(i, m)] * ways[(m, j)]
            ways[(i, j)] = total
    return ways[(0, k - 1)]


def brute_force_count(poly: SimplePolygon) -> int:
    """Independent oracle: recursive ear splitting on explicit sub-polygons.

    The triangle resting on the last boundary edge is chosen, the two
    cut-off chains are rebuilt as fresh SimplePolygon objects, and their
    visibility is recomputed from scratch.  Capped at BRUTE_FORCE_LIMIT
    vertices.
    """
    if len(poly) > BRUTE_FORCE_LIMIT:
        raise TooLargeError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices")
    memo: dict[tuple[tuple[int, int], ...], int] = {}

    def count(pts: tuple[Point, ...]) -> int:
        k = len(pts)
        if k <= 2:
            # A chain of two vertices closes into the chord itself.
            return 1
        if k == 3:
            return 1
        key = tuple((p.x, p.y) for p in pts)
        hit = memo.get(key)
        if hit is not None:
            return hit
        sub = SimplePolygon(pts, _skip_checks=True)
        total = 0
        # Fixed edge: (k-1, 0).  The apex m forms the triangle on it.
        for m in range(1, k - 1):
            if not _closable(sub, 0, m) or not _closable(sub, m, k - 1):
                continue
            total += count(pts[: m + 1]) * count(pts[m:])
        memo[key] = total
        return total

    return count(poly.boundary)


class Chord:
    """An internal chord of a polygon, by boundary vertex indices."""

    __slots__ = ("i", "j")

    def __init__(self, i: int, j: int):
        if i == j:
            raise InvalidChordError("chord endpoints coincide")
        self.i, self.j = (i, j) if i < j else (j, i)

    def __repr__(self) -> str:
        return f"Chord({self.i}, {self.j})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Chord) and (self.i, self.j) == (other.i, other.j)

    def __hash__(self) -> int:
        return hash((self.i, self.j))


def tr_with_chords(poly: SimplePolygon, required: Sequence[Chord]) -> int:
    """Number of triangulations of poly containing every required chord.

    The chords must be valid internal diagonals and pairwise non-crossing;
    they split the polygon into faces whose counts multiply.
    """
    k = len(poly)
    for ch in required:
        if not (0 <= ch.i < k and 0 <= ch.j < k):
            raise InvalidChordError(f"{ch} out of range for a {k}-gon")
        if (ch.i + 1) % k == ch.j or (ch.j + 1) % k == ch.i:
            raise InvalidChordError(f"{ch} connects adjacent vertices")
        if not poly.sees(ch.i, ch.j):
            raise InvalidChordError(f"{ch} is not an internal diagonal")
    pts = poly.boundary
    for a in range(len(required)):
        for b in range(a + 1, len(required)):
            c1, c2 = required[a], required[b]
            if segments_cross(pts[c1.i], pts[c1.j], pts[c2.i], pts[c2.j]):
                raise CrossingChordsError(f"{c1} crosses {c2}")

    # Split the boundary index cycle along each chord in turn.
    pieces: list[list[int]] = [list(range(k))]
    for ch in required:
        for idx, piece in enumerate(pieces):
            if ch.i in piece and ch.j in piece:
                a, b = piece.index(ch.i), piece.index(ch.j)
                if a > b:
                    a, b = b, a
                left = piece[a : b + 1]
                right = piece[b:] + piece[: a + 1]
                pieces[idx : idx + 1] = [left, right]
                break
        else:
            raise CrossingChordsError(f"{ch} does not fit the prior splits")

    total = 1
    for piece in pieces:
        total *= count_triangulations(SimplePolygon([pts[i] for i in piece], _skip_checks=True))
    return total


def reflex_template(n: int, r: int) -> SimplePolygon:
    """Coordinate realization of the C^(r)_n polygons, r in {1, 2}.

    Convex part on the parabola y = x^2 (scaled by 4); each reflex
    vertex is a one-unit inward dent on an edge, blocking exactly the
    visibility between its two neighbours.
    """
    if r == 1:
        if n < 2:
            raise OutOfRangeError("C' template needs n >= 2")
        # n+1 convex vertices (t = 0..n), one dent on the closing edge.
        hull = [Point(4 * t, 4 * t * t) for t in range(n + 1)]
        # Closing edge runs from (4n, 4n^2) back to (0, 0); its line is
        # y = n x, so one unit below it at x = 4 is strictly inside.
        dent = Point(4, 4 * n - 1)
        return SimplePolygon(hull + [dent])
    if r == 2:
        if n < 4:
            raise OutOfRangeError("C'' template needs n >= 4")
        # n convex vertices (t = 0..n-1), dents on the closing edge and
        # on a middle chain edge; the reflex vertices are not adjacent.
        hull = [Point(4 * t, 4 * t * t) for t in range(n)]
        mid = (n - 1) // 2
        a, b = hull[mid], hull[mid + 1]
        chain_dent = Point(a.x + 2, (a.y + b.y) // 2 + 1)
        closing_dent = Point(4, 4 * (n - 1) - 1)
        boundary = hull[: mid + 1] + [chain_dent] + hull[mid + 1 :] + [closing_dent]
        return SimplePolygon(boundary)
    raise OutOfRangeError(f"templates exist for r in {{1, 2}}, got r={r}")


# --- polygon text format: first line k, then k lines "x y" in CCW order ---

def write_polygon(poly: SimplePolygon, path: str | Path) -> None:
    lines = [str(len(poly))]
    lines += [f"{p.x} {p.y}" for p in poly.boundary]
    Path(path).write_text("\n".join(lines) + "\n")


def read_polygon(path: str | Path) -> SimplePolygon:
    text = Path(path).read_text().split()
    if not text:
        raise ValueError(f"empty polygon file: {path}")
    k = int(text[0])
    coords = text[1:]
    if len(coords) != 2 * k:
        raise ValueError(f"expected {2 * k} coordinates, found {len(coords)}")
    return SimplePolygon(
        [Point(int(coords[2 * i]), int(coords[2 * i + 1])) for i in range(k)]
    )
