"""Exact planar geometry: integer points, orientation tests, point-set
containers, and generators for the standard test configurations.

Every predicate is an exact integer determinant; no floating point is
used anywhere.  Point sets are validated to be in general position (no
three points collinear) on construction, because every downstream count
silently depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CollinearTripleError, DuplicatePointError, ExhaustedRetriesError
from .rng import SplitMix64

# Sign values returned by orient().
CCW = 1
CW = -1
COLLINEAR = 0


@dataclass(frozen=True, slots=True)
class Point:
    """Immutable planar point with exact integer coordinates."""

    x: int
    y: int

    def __post_init__(self):
        if not isinstance(self.x, int) or not isinstance(self.y, int):
            raise TypeError(f"coordinates must be int, got ({self.x!r}, {self.y!r})")

    def __iter__(self):
        return iter((self.x, self.y))

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the determinant |b-a, c-a|: CCW, CW, or COLLINEAR."""
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if d > 0:
        return CCW
    if d < 0:
        return CW
    return COLLINEAR


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the open segments ab and cd properly intersect.

    Shared endpoints, endpoint-on-segment contacts, and collinear
    overlaps do not count as proper crossings.
    """
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0 and o1 != o2 and o3 != o4


def point_on_open_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies strictly between a and b on the segment ab."""
    if orient(a, b, p) != COLLINEAR:
        return False
    if a.x != b.x:
        return min(a.x, b.x) < p.x < max(a.x, b.x)
    return min(a.y, b.y) < p.y < max(a.y, b.y)


def point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """Strict interior test for a CCW triangle."""
    return (
        orient(a, b, p) == CCW
        and orient(b, c, p) == CCW
        and orient(c, a, p) == CCW
    )


def _check_general_position(points: Sequence[Point]) -> None:
    seen: dict[tuple[int, int], int] = {}
    for i, p in enumerate(points):
        key = (p.x, p.y)
        if key in seen:
            raise DuplicatePointError(seen[key], i)
        seen[key] = i
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orient(points[i], points[j], points[k]) == COLLINEAR:
                    raise CollinearTripleError(i, j, k)


class PointSet:
    """Ordered, validated collection of distinct points in general position.

    Indices 0..n-1 are stable labels used by every downstream structure.
    """

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Point | tuple[int, int]]):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in points)
        if not pts:
            raise ValueError("point set must contain at least one point")
        _check_general_position(pts)
        self.points = pts

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __repr__(self) -> str:
        return f"PointSet({len(self.points)} points)"

    def convex_hull_indices(self) -> tuple[int, ...]:
        """Indices of the hull vertices in CCW order (monotone chain)."""
        idx = sorted(range(len(self.points)), key=lambda i: (self.points[i].x, self.points[i].y))
        if len(idx) <= 2:
            return tuple(idx)

        def half(order):
            chain: list[int] = []
            for i in order:
                while len(chain) >= 2 and orient(
                    self.points[chain[-2]], self.points[chain[-1]], self.points[i]
                ) != CCW:
                    chain.pop()
                chain.append(i)
            return chain

        lower = half(idx)
        upper = half(reversed(idx))
        return tuple(lower[:-1] + upper[:-1])


def validate_general_position(points: Iterable[Point | tuple[int, int]]) -> PointSet:
    """Build a PointSet, raising DuplicatePointError / CollinearTripleError."""
    return PointSet(points)


class AugmentedPointSet:
    """A point set together with a bounding triangle that is its convex hull.

    The combined labelling puts the n base points first (indices 0..n-1)
    and the three frame vertices last (n, n+1, n+2).
    """

    __slots__ = ("base", "frame", "points")

    def __init__(self, base: PointSet | None, frame: Sequence[Point]):
        frame = tuple(frame)
        if len(frame) != 3:
            raise ValueError("frame must have exactly 3 vertices")
        nbase = len(base) if base is not None else 0
        if orient(*frame) == CW:
            frame = (frame[0], frame[2], frame[1])
        if orient(*frame) != CCW:
            raise CollinearTripleError(nbase, nbase + 1, nbase + 2)
        base_pts: tuple[Point, ...] = tuple(base) if base is not None else ()
        for i, p in enumerate(base_pts):
            if not point_in_triangle(p, *frame):
                raise ValueError(f"base point {i} not strictly inside the frame")
        combined = base_pts + frame
        _check_general_position(combined)
        self.base = base
        self.frame = frame
        self.points = combined

    @classmethod
    def from_points(cls, ps: PointSet) -> "AugmentedPointSet":
        """Reinterpret a point set with a triangular hull as frame + interior."""
        hull = ps.convex_hull_indices()
        if len(hull) != 3:
            raise ValueError(f"convex hull has {len(hull)} vertices, need exactly 3")
        hull_set = set(hull)
        interior = [ps[i] for i in range(len(ps)) if i not in hull_set]
        base = PointSet(interior) if interior else None
        frame = tuple(ps[i] for i in hull)
        return cls(base, frame)

    @property
    def n(self) -> int:
        """Number of interior (base) points."""
        return len(self.points) - 3

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def frame_indices(self) -> tuple[int, int, int]:
        n = self.n
        return (n, n + 1, n + 2)

    def interior_indices(self) -> range:
        return range(self.n)

    def without(self, q: int) -> "AugmentedPointSet":
        """The augmented set with interior point q removed (same frame)."""
        if not 0 <= q < self.n:
            raise IndexError(f"no interior point {q}")
        remaining = [p for i, p in enumerate(self.base) if i != q]
        return AugmentedPointSet(PointSet(remaining) if remaining else None, self.frame)

    def __repr__(self) -> str:
        return f"AugmentedPointSet(n={self.n})"


def _frame_for(base: PointSet) -> tuple[Point, Point, Point]:
    xs = [p.x for p in base]
    ys = [p.y for p in base]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    w = max(maxx - minx, maxy - miny, 1)
    # Axis-aligned right triangle at 4x the bounding box; the hypotenuse
    # x + y = const clears the box by construction.
    a = Point(minx - 4 * w, miny - 4 * w)
    b = Point(maxx + 9 * w, miny - 4 * w)
    c = Point(minx - 4 * w, maxy + 9 * w)
    return a, b, c


def augment(base: PointSet) -> AugmentedPointSet:
    """Wrap a point set in a strictly containing triangle.

    The frame is derived deterministically from the bounding box; on an
    accidental collinearity the right-angle corner is nudged down-left
    by (-1, -2), a direction never parallel to the same line twice.
    """
    a, b, c = _frame_for(base)
    for _ in range(1000):
        try:
            return AugmentedPointSet(base, (a, b, c))
        except CollinearTripleError:
            a = Point(a.x - 1, a.y - 2)
    raise ExhaustedRetriesError("could not place a frame in general position")


def gen_convex(n: int) -> PointSet:
    """n integer points in strictly convex position (on the parabola y = x^2)."""
    if n < 3:
        raise ValueError("need n >= 3 for a convex polygon")
    return PointSet([Point(t, t * t) for t in range(n)])


def gen_convex_arc_in_triangle(n: int) -> AugmentedPointSet:
    """n points on a concave arc spanning the bottom edge of the frame.

    The arc y = x(M - x), M = n + 1, vanishes exactly at the two bottom
    frame corners, so the arc chain plus the bottom edge is a convex
    (n+2)-gon and every spoke from an arc point to the apex is forced.
    The apex height H = 4M^2 exceeds every chord intercept ab < M^2, so
    the configuration is in general position without any nudging.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    m = n + 1
    base = PointSet([Point(t, t * (m - t)) for t in range(1, n + 1)])
    frame = (Point(0, 0), Point(m, 0), Point(0, 4 * m * m))
    return AugmentedPointSet(base, frame)


def gen_random(n: int, seed: int) -> PointSet:
    """Deterministic random point set: rejection sampling on an integer grid.

    The grid side grows with n^2 so that general position stays easy to
    hit; a set that cannot be completed raises ExhaustedRetriesError.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    rng = SplitMix64(seed)
    side = max(16, 4 * n * n)
    pts: list[Point] = []
    attempts = 0
    max_attempts = 2000 * (n + 1)
    while len(pts) < n:
        if attempts >= max_attempts:
            raise ExhaustedRetriesError(
                f"placed {len(pts)}/{n} points after {attempts} attempts"
            )
        attempts += 1
        cand = Point(rng.below(side), rng.below(side))
        if any(cand == p for p in pts):
            continue
        ok = True
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if orient(pts[i], pts[j], cand) == COLLINEAR:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            pts.append(cand)
    return PointSet(pts)


# --- point-set text format: first line n, then n lines "x y" ---

def write_points(ps: PointSet | AugmentedPointSet, path: str | Path) -> None:
    pts = ps.points if isinstance(ps, AugmentedPointSet) else ps.points
    lines = [str(len(pts))]
    lines += [f"{p.x} {p.y}" for p in pts]
    Path(path).write_text("\n".join(lines) + "\n")


def read_points(path: str | Path) -> PointSet:
    text = Path(path).read_text().split()
    if not text:
        raise ValueError(f"empty point-set file: {path}")
    n = int(text[0])
    coords = text[1:]
    if len(coords) != 2 * n:
        raise ValueError(f"expected {2 * n} coordinates, found {len(coords)}")
    pts = [Point(int(coords[2 * i]), int(coords[2 * i + 1])) for i in range(n)]
    return PointSet(pts)
