"""The charging scheme: vints, flip-trees, rigid cores, exact charges.

A vint is a (point, triangulation) pair; an i-vint has degree i.
Deleting the point leaves a star-shaped hole whose triangulation count
is the vint's support.  A degree-i vint sends (7 - i) / support to each
3-vint it can be flipped down to, so a 3-vint self-charges 4 and
degree >= 8 vints charge negative amounts.

For a 3-vint v the charging vints are recovered without any search:
they correspond bijectively to the root-containing subtrees of the
flip-tree of v.  Each subtree's polygon is the hole of its vint, and
its edge count j gives the degree j + 3.  The rigid core (the maximal
all-rigid subtree at the root) captures exactly the support-1 chargers.

``audit`` runs the whole scheme over every triangulation of an instance
and checks charge conservation, the per-degree charger-count bound, and
the maximum charge received by any 3-vint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import CapExceededError, HasDeepEdgesError, NotA3VintError
from .geometry import AugmentedPointSet, Point
from .polygons import SimplePolygon, catalan, count_triangulations
from .triangulation import (
    EdgeRef,
    Triangulation,
    _ccw,
    edge,
    edge_apex_map,
    fingerprint_bytes,
)

DEFAULT_SUBTREE_CAP = 10**6

# Conjectured ceiling on any single 3-vint charge; exceeding it is
# flagged as noteworthy, only >= 30 is a hard violation.
BELIEVED_MAX_CHARGE = Fraction(28 * 28 + 17, 28)
HARD_CHARGE_BOUND = 30


# ---------------------------------------------------------------------------
# vints and holes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Vint:
    """A vertex-in-triangulation pair.  The point must be interior."""

    point: int
    triangulation: Triangulation

    def __post_init__(self):
        container = self.triangulation.vertices
        if isinstance(container, AugmentedPointSet):
            interior = self.point in container.interior_indices()
        else:
            interior = self.point not in container.convex_hull_indices()
        if not interior:
            raise ValueError(f"point {self.point} is not interior")

    @property
    def degree(self) -> int:
        return self.triangulation.degree_map()[self.point]

    def link(self) -> list[int]:
        return self.triangulation.link_cycle(self.point)

    def key(self) -> tuple[int, str]:
        return (self.point, self.triangulation.fingerprint())


@dataclass(frozen=True)
class StarHole:
    """The polygon left by deleting a vint's point and incident edges."""

    polygon: SimplePolygon
    indices: tuple[int, ...]


def hole_of(u: Vint) -> StarHole:
    cycle = u.link()
    pts = u.triangulation.points
    poly = SimplePolygon(
        [pts[i] for i in cycle], kernel_witness=pts[u.point]
    )
    return StarHole(polygon=poly, indices=tuple(cycle))


def support(u: Vint) -> int:
    """Number of triangulations of the vint's hole."""
    return count_triangulations(hole_of(u).polygon)


# ---------------------------------------------------------------------------
# flip-trees
# ---------------------------------------------------------------------------


class FlipTreeNode:
    """A non-root flip-tree node: a face of the base triangulation.

    ``dual`` is the triangulation edge shared with the parent triangle,
    ``apex`` the face's vertex away from that edge, and ``opp`` the
    parent triangle's vertex opposite the dual edge.  The edge into this
    node is rigid iff the dual edge cannot be flipped inside the union
    of the two triangles.
    """

    __slots__ = ("dual", "apex", "opp", "rigid", "level", "children")

    def __init__(self, dual, apex, opp, rigid, level, children=()):
        self.dual = dual
        self.apex = apex
        self.opp = opp
        self.rigid = rigid
        self.level = level
        self.children = children

    def face(self) -> tuple[int, int, int]:
        return tuple(sorted((self.dual[0], self.dual[1], self.apex)))

    def iter_nodes(self):
        yield self
        for c in self.children:
            yield from c.iter_nodes()

    def key(self):
        return (self.dual, self.apex, self.rigid, tuple(c.key() for c in self.children))


class FlipTree:
    """Rooted tree of the vints that flip down to a given 3-vint.

    The root stands for the hole triangle of the 3-vint; its children
    (at most three) arise from hole-triangle edges flippable in the base
    triangulation, deeper children (at most two each) from expansions
    that keep the grown polygon star-shaped around the point.
    """

    __slots__ = ("point", "link", "children", "triangulation")

    def __init__(self, point, link, children, triangulation=None):
        self.point = point
        self.link = link
        self.children = children
        self.triangulation = triangulation

    def nodes(self) -> list[FlipTreeNode]:
        out = []
        for c in self.children:
            out.extend(c.iter_nodes())
        return out

    def edge_count(self) -> int:
        return len(self.nodes())

    def key(self):
        return (self.link, tuple(c.key() for c in self.children))

    def subtree_count(self) -> int:
        def grow(node):
            t = 1
            for c in node.children:
                t *= 1 + grow(c)
            return t

        total = 1
        for c in self.children:
            total *= 1 + grow(c)
        return total

    def to_dot(self) -> str:
        lines = ["digraph fliptree {", "  node [shape=circle];"]
        a, b, c = self.link
        lines.append(f'  root [label="t({a},{b},{c})", shape=triangle];')
        counter = [0]

        def emit(parent_name, node):
            counter[0] += 1
            name = f"n{counter[0]}"
            lines.append(f'  {name} [label="{node.apex}"];')
            style = "solid" if node.rigid else "dashed"
            lines.append(f"  {parent_name} -> {name} [style={style}];")
            for ch in node.children:
                emit(name, ch)

        for ch in self.children:
            emit("root", ch)
        lines.append("}")
        return "\n".join(lines) + "\n"


def _cross(xy, a: int, b: int, c: int, d: int) -> bool:
    """Proper crossing of segments ab and cd over coordinate tuples."""
    ax, ay = xy[a]
    bx, by = xy[b]
    cx, cy = xy[c]
    dx, dy = xy[d]
    o1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    o2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    if o1 == 0 or o2 == 0 or (o1 > 0) == (o2 > 0):
        return False
    o3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    o4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    return o3 != 0 and o4 != 0 and (o3 > 0) != (o4 > 0)


def _grow_node(xy, amap, p, u, v, ref, opp, used, level):
    """Child through edge (u, v), or None.

    ``ref`` is the apex of the near-side triangle (used to pick the far
    face), ``opp`` the parent triangle's vertex opposite (u, v) (used
    for the rigidity test).
    """
    apexes = amap.get(edge(u, v))
    far = [w for w in apexes if w != ref]
    if not far:
        return None
    q = far[0]
    if not _cross(xy, p, q, u, v):
        return None
    face = tuple(sorted((u, v, q)))
    if face in used:
        raise AssertionError("flip-tree expansion revisited a face")
    used.add(face)
    rigid = not _cross(xy, opp, q, u, v)
    children = []
    for x, y in ((u, v), (v, u)):
        # child edge (q, x); the near apex and the opposite vertex are y
        child = _grow_node(xy, amap, p, q, x, ref=y, opp=y, used=used, level=level + 1)
        if child is not None:
            children.append(child)
    return FlipTreeNode(edge(u, v), q, opp, rigid, level, tuple(children))


def _canon_cycle(cycle) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


def build_flip_tree_raw(xy, tris, p: int, link=None) -> FlipTree:
    """Flip-tree of the 3-vint (p, tris) over raw coordinate tuples."""
    amap = edge_apex_map(tris)
    if link is None:
        succ = {}
        for t in tris:
            if p in t:
                a, b, c = t
                if a == p:
                    succ[b] = c
                elif b == p:
                    succ[c] = a
                else:
                    succ[a] = b
        start = min(succ)
        link = [start]
        cur = succ[start]
        while cur != start:
            link.append(cur)
            cur = succ[cur]
    if len(link) != 3:
        raise NotA3VintError(f"point {p} has degree {len(link)}")
    a, b, c = _canon_cycle(list(link))
    used = set()
    children = []
    for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
        node = _grow_node(xy, amap, p, u, v, ref=p, opp=w, used=used, level=1)
        if node is not None:
            children.append(node)
    return FlipTree(p, (a, b, c), tuple(children))


def build_flip_tree(v: Vint) -> FlipTree:
    """Flip-tree of a 3-vint of a triangulation over an augmented set."""
    t = v.triangulation
    if t.degree_map().get(v.point, 0) != 3:
        raise NotA3VintError(f"point {v.point} has degree {t.degree_map().get(v.point)}")
    xy = [(pt.x, pt.y) for pt in t.points]
    tree = build_flip_tree_raw(xy, t.triangles, v.point)
    tree.triangulation = t
    return tree


# ---------------------------------------------------------------------------
# rigid cores and their charge contributions
# ---------------------------------------------------------------------------


class CoreNode:
    """Abstract rigid-core node: only the branching shape matters."""

    __slots__ = ("children", "level")

    def __init__(self, children=(), level=1):
        self.children = tuple(children)
        self.level = level

    def iter_nodes(self):
        yield self
        for c in self.children:
            yield from c.iter_nodes()


class RigidCore:
    """Maximal root-containing all-rigid subtree of a flip-tree.

    Level statistics: lambda1..lambda3 count edges per level, nu2 counts
    level-1 nodes with two child edges.  The structural restrictions
    lambda1 <= 3, lambda2 <= 2 lambda1, lambda3 <= 2 lambda2 and
    nu2 <= lambda2 / 2 are validated on construction.
    """

    __slots__ = ("children", "m", "lambda1", "lambda2", "lambda3", "nu2", "max_level")

    def __init__(self, children: tuple[CoreNode, ...]):
        if len(children) > 3:
            raise ValueError("core root has more than three children")
        self.children = children
        levels: dict[int, int] = {}
        self.nu2 = 0
        self.m = 0
        self.max_level = 0
        for c in children:
            for node in c.iter_nodes():
                if len(node.children) > 2:
                    raise ValueError("core node has more than two children")
                self.m += 1
                levels[node.level] = levels.get(node.level, 0) + 1
                self.max_level = max(self.max_level, node.level)
                if node.level == 1 and len(node.children) == 2:
                    self.nu2 += 1
        self.lambda1 = levels.get(1, 0)
        self.lambda2 = levels.get(2, 0)
        self.lambda3 = levels.get(3, 0)
        if not (
            self.lambda2 <= 2 * self.lambda1
            and self.lambda3 <= 2 * self.lambda2
            and 2 * self.nu2 <= self.lambda2
        ):
            raise ValueError("rigid-core level statistics violate the restrictions")

    @classmethod
    def from_shape(cls, shape) -> "RigidCore":
        """Build an abstract core from nested child-count tuples.

        ``shape`` is a tuple of child shapes for the root; each child
        shape is again a tuple for that node's children, e.g. the
        complete height-3 core is ``(h2, h2, h2)`` with
        ``h2 = (((), ()), ((), ()))``.
        """

        def build(sub, level):
            return CoreNode(tuple(build(s, level + 1) for s in sub), level)

        return cls(tuple(build(s, 1) for s in shape))

    def subtree_edge_counts(self, cap: int = DEFAULT_SUBTREE_CAP) -> list[int]:
        """Edge count j of every root-containing subtree, by explicit
        enumeration of the include/exclude decisions."""
        total = 1
        for c in self.children:
            total *= 1 + _shape_count(c)
        if total > cap:
            raise CapExceededError(f"core has {total} subtrees, cap {cap}")
        sizes: list[int] = []
        pending: list[CoreNode] = list(self.children)
        chosen = [0]

        def rec():
            if not pending:
                sizes.append(chosen[0])
                return
            node = pending.pop()
            rec()
            chosen[0] += 1
            pending.extend(node.children)
            rec()
            for _ in node.children:
                pending.pop()
            chosen[0] -= 1
            pending.append(node)

        rec()
        return sizes


def _shape_count(node: CoreNode) -> int:
    t = 1
    for c in node.children:
        t *= 1 + _shape_count(c)
    return t


def rigid_core(tree: FlipTree) -> RigidCore:
    """Extract the maximal root-containing all-rigid subtree."""

    def keep(node: FlipTreeNode, level: int) -> CoreNode | None:
        if not node.rigid:
            return None
        kids = [keep(c, level + 1) for c in node.children]
        return CoreNode(tuple(k for k in kids if k is not None), level)

    kept = [keep(c, 1) for c in tree.children]
    return RigidCore(tuple(k for k in kept if k is not None))


def contr_plus_closed_form(core: RigidCore) -> int:
    """Positive charge of a core's subtrees via the level statistics."""
    if core.max_level >= 4:
        raise HasDeepEdgesError("closed form defined for cores without level-4 edges")
    l1, l2, l3 = core.lambda1, core.lambda2, core.lambda3
    return 4 + comb(l1, 3) + l1 * l1 + 2 * l1 + (l1 + 1) * l2 + l3 + core.nu2


def contr_plus_census(core: RigidCore, cap: int = DEFAULT_SUBTREE_CAP) -> int:
    return sum(4 - j for j in core.subtree_edge_counts(cap) if j <= 3)


def contr_plus(core: RigidCore, cap: int = DEFAULT_SUBTREE_CAP) -> int:
    try:
        return contr_plus_closed_form(core)
    except HasDeepEdgesError:
        return contr_plus_census(core, cap)


def contr_minus(core: RigidCore, cap: int = DEFAULT_SUBTREE_CAP) -> int:
    """Negative charge: subtrees with five or more edges."""
    return sum(4 - j for j in core.subtree_edge_counts(cap) if j >= 5)


# ---------------------------------------------------------------------------
# subtree census of a geometric flip-tree: the charging vints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubtreeInfo:
    """One root-containing subtree of a flip-tree.

    ``dual_edges`` are the triangulation edges dual to the chosen tree
    edges (sorted), ``boundary`` the polygon of the grown hole in CCW
    order, ``all_rigid`` whether the subtree lies in the rigid core.
    """

    dual_edges: tuple[EdgeRef, ...]
    boundary: tuple[int, ...]
    all_rigid: bool

    @property
    def j(self) -> int:
        return len(self.dual_edges)

    @property
    def degree(self) -> int:
        return len(self.dual_edges) + 3


def iter_subtrees(tree: FlipTree, cap: int = DEFAULT_SUBTREE_CAP):
    """Yield SubtreeInfo for every root-containing subtree.

    The polygon is maintained incrementally: including a node replaces
    its dual edge (u, v) on the boundary cycle with (u, apex, v).
    """
    total = tree.subtree_count()
    if total > cap:
        raise CapExceededError(f"flip-tree has {total} subtrees, cap {cap}")
    boundary: list[int] = list(tree.link)
    pending: list[FlipTreeNode] = list(tree.children)
    chosen: list[FlipTreeNode] = []
    out: list[SubtreeInfo] = []

    def insert(node: FlipTreeNode) -> int:
        u, v = node.dual
        k = len(boundary)
        for i in range(k):
            a, b = boundary[i], boundary[(i + 1) % k]
            if (a, b) == (u, v) or (a, b) == (v, u):
                boundary.insert(i + 1, node.apex)
                return i + 1
        raise AssertionError(f"dual edge {node.dual} not on boundary")

    def rec():
        if not pending:
            out.append(
                SubtreeInfo(
                    dual_edges=tuple(sorted(n.dual for n in chosen)),
                    boundary=tuple(boundary),
                    all_rigid=all(n.rigid for n in chosen),
                )
            )
            return
        node = pending.pop()
        rec()
        pos = insert(node)
        chosen.append(node)
        pending.extend(node.children)
        rec()
        for _ in node.children:
            pending.pop()
        chosen.pop()
        boundary.pop(pos)
        pending.append(node)

    rec()
    out.sort(key=lambda s: (s.j, s.dual_edges))
    return out


@dataclass(frozen=True)
class ChargeContribution:
    j: int
    degree: int
    support: int
    amount: Fraction
    dual_edges: tuple[EdgeRef, ...]


@dataclass
class ChargeReport:
    """Exact charge received by one 3-vint, itemized by charging vint."""

    point: int
    fingerprint: str
    contributions: list[ChargeContribution]
    total: Fraction

    def degree_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for c in self.contributions:
            counts[c.degree] = counts.get(c.degree, 0) + 1
        return counts

    def to_json_dict(self) -> dict:
        return {
            "point": self.point,
            "fingerprint": self.fingerprint,
            "total": {"num": str(self.total.numerator), "den": str(self.total.denominator)},
            "contributions": [
                {
                    "degree": c.degree,
                    "support": str(c.support),
                    "amount": {
                        "num": str(c.amount.numerator),
                        "den": str(c.amount.denominator),
                    },
                    "dual_edges": [list(e) for e in c.dual_edges],
                }
                for c in self.contributions
            ],
        }


class _PolygonCounter:
    """Memoized hole-polygon triangulation counts over one point set."""

    __slots__ = ("points", "cache")

    def __init__(self, points: tuple[Point, ...]):
        self.points = points
        self.cache: dict[tuple[int, ...], int] = {}

    def count(self, boundary: tuple[int, ...]) -> int:
        key = _canon_cycle(list(boundary))
        hit = self.cache.get(key)
        if hit is None:
            poly = SimplePolygon(
                [self.points[i] for i in key], _skip_checks=True
            )
            hit = self.cache[key] = count_triangulations(poly)
        return hit


def charge_from_tree(
    tree: FlipTree,
    counter: _PolygonCounter,
    cap: int = DEFAULT_SUBTREE_CAP,
    fingerprint: str = "",
) -> ChargeReport:
    contribs = []
    total = Fraction(0)
    for sub in iter_subtrees(tree, cap):
        supp = counter.count(sub.boundary)
        amount = Fraction(4 - sub.j, supp)
        total += amount
        contribs.append(
            ChargeContribution(sub.j, sub.degree, supp, amount, sub.dual_edges)
        )
    return ChargeReport(tree.point, fingerprint, contribs, total)


def charge(v: Vint, cap: int = DEFAULT_SUBTREE_CAP) -> ChargeReport:
    """Exact total charge received by the 3-vint v."""
    tree = build_flip_tree(v)
    counter = _PolygonCounter(v.triangulation.points)
    return charge_from_tree(tree, counter, cap, v.triangulation.fingerprint())


def enumerate_charging_vints(
    v: Vint, cap: int = DEFAULT_SUBTREE_CAP
) -> list[tuple[SubtreeInfo, Vint]]:
    """All vints charging v, via the subtree bijection.

    Each root-containing subtree of the flip-tree maps to the vint whose
    triangulation re-fans the subtree's polygon from v's point.
    """
    tree = build_flip_tree(v)
    t = v.triangulation
    pts = t.points
    p = v.point
    out = []
    for sub in iter_subtrees(tree, cap):
        # The region's faces are the three fan faces at p plus the chosen
        # node faces, and every face containing a dual edge is in the
        # region; drop them all, then re-fan the boundary from p.
        drop = set()
        duals = set(sub.dual_edges)
        for tri in t.triangles:
            a, b, c = tri
            if p in tri:
                drop.add(tri)
                continue
            for e_ in (edge(a, b), edge(b, c), edge(c, a)):
                if e_ in duals:
                    drop.add(tri)
                    break
        new_tris = [tri for tri in t.triangles if tri not in drop]
        k = len(sub.boundary)
        for i in range(k):
            new_tris.append(
                _ccw(pts, p, sub.boundary[i], sub.boundary[(i + 1) % k])
            )
        vint = Vint(p, Triangulation(t.vertices, new_tris))
        out.append((sub, vint))
    return out

# ---------------------------------------------------------------------------
# whole-instance audit
# ---------------------------------------------------------------------------


@dataclass
class AuditReport:
    """Charging-scheme audit over every triangulation of an instance.

    ``conservation_lhs`` sums (7 - deg) over every vint; the right side
    sums the charge received by every 3-vint.  Exact equality is the
    consistency check of the whole scheme.
    """

    n: int
    triangulation_count: int
    conservation_lhs: int
    conservation_rhs: Fraction
    max_charge: Fraction
    max_charge_at: tuple[str, int] | None
    charger_count_max: dict[int, int]
    vhat3: Fraction | None
    degree_totals: dict[int, int]
    violations: list[str] = field(default_factory=list)
    exceeds_believed_max: bool = False
    three_vint_count: int = 0

    @property
    def conservation_ok(self) -> bool:
        return self.conservation_lhs == self.conservation_rhs

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "count": str(self.triangulation_count),
            "conservation": {
                "lhs": str(self.conservation_lhs),
                "rhs": {
                    "num": str(self.conservation_rhs.numerator),
                    "den": str(self.conservation_rhs.denominator),
                },
                "ok": self.conservation_ok,
            },
            "max_charge": {
                "num": str(self.max_charge.numerator),
                "den": str(self.max_charge.denominator),
                "decimal": float(self.max_charge),
            },
            "max_charge_at": (
                {"fingerprint": self.max_charge_at[0], "point": self.max_charge_at[1]}
                if self.max_charge_at
                else None
            ),
            "charger_count_max": {str(k): v for k, v in sorted(self.charger_count_max.items())},
            "vhat3": (
                {"num": str(self.vhat3.numerator), "den": str(self.vhat3.denominator)}
                if self.vhat3 is not None
                else None
            ),
            "exceeds_believed_max": self.exceeds_believed_max,
            "violations": list(self.violations),
            "ok": self.ok,
        }


def _audit_state(xy, tris, interior, frame, counter, charge_cache, subtree_cap):
    """Per-triangulation audit work; returns the partial aggregates."""
    deg: dict[int, int] = {}
    amap = edge_apex_map(tris)
    for i, j in amap:
        deg[i] = deg.get(i, 0) + 1
        deg[j] = deg.get(j, 0) + 1
    n = len(interior)
    lhs = 0
    v_hist = {}
    for p_ in interior:
        d = deg[p_]
        lhs += 7 - d
        v_hist[d] = v_hist.get(d, 0) + 1
    eq1 = sum(deg[f] for f in frame) + sum(i * c for i, c in v_hist.items())
    violations = []
    if eq1 != 6 * n + 6:
        violations.append(f"degree identity violated: {eq1} != {6 * n + 6}")
    if n >= 1 and sum(i * c for i, c in v_hist.items()) > 6 * n - 3:
        violations.append("interior degree sum exceeds 6n - 3")
    rhs = Fraction(0)
    max_charge = Fraction(-(10**9))
    max_at = None
    charger_max = {}
    three_vints = 0
    fp = None
    for p_ in interior:
        if deg[p_] != 3:
            continue
        three_vints += 1
        tree = build_flip_tree_raw(xy, tris, p_)
        key = tree.key()
        hit = charge_cache.get(key)
        if hit is None:
            total = Fraction(0)
            counts = {}
            for sub in iter_subtrees(tree, subtree_cap):
                supp = counter.count(sub.boundary)
                total += Fraction(4 - sub.j, supp)
                counts[sub.degree] = counts.get(sub.degree, 0) + 1
            hit = charge_cache[key] = (total, tuple(sorted(counts.items())))
        total, count_items = hit
        rhs += total
        if total > max_charge:
            if fp is None:
                fp = fingerprint_bytes(tris).hex()
            max_charge = total
            max_at = (fp, p_)
        for degree_, cnt in count_items:
            if cnt > charger_max.get(degree_, 0):
                charger_max[degree_] = cnt
            bound = 1 if degree_ == 3 else catalan(degree_ - 1) - catalan(degree_ - 2)
            if cnt > bound:
                violations.append(
                    f"{cnt} chargers of degree {degree_} at point {p_} exceed bound {bound}"
                )
        if total >= HARD_CHARGE_BOUND:
            if fp is None:
                fp = fingerprint_bytes(tris).hex()
            violations.append(
                f"charge {total} >= {HARD_CHARGE_BOUND} at point {p_} in {fp}"
            )
    return lhs, v_hist, rhs, max_charge, max_at, charger_max, three_vints, violations


def audit(
    P: AugmentedPointSet,
    subtree_cap: int = DEFAULT_SUBTREE_CAP,
    jobs: int = 1,
) -> AuditReport:
    """Audit the charging scheme over every triangulation of S+.

    Checks, with exact arithmetic throughout: the degree identities, the
    conservation of total charge, the per-degree charger-count bound,
    the hard < 30 charge bound, and vhat3 * 30 >= n.
    """
    from .enumeration import flip_graph_states

    if not isinstance(P, AugmentedPointSet):
        raise TypeError("audit needs an AugmentedPointSet")
    xy = [(p.x, p.y) for p in P.points]
    interior = list(P.interior_indices())
    frame = list(P.frame_indices())
    n = P.n

    counter = _PolygonCounter(P.points)
    charge_cache: dict = {}
    count = 0
    lhs_total = 0
    rhs_total = Fraction(0)
    max_charge = Fraction(-(10**9))
    max_at = None
    charger_max: dict[int, int] = {}
    degree_totals: dict[int, int] = {}
    violations: list[str] = []
    three_vints = 0

    states = flip_graph_states(P)
    if jobs > 1:
        results = _audit_parallel(P, states, jobs, subtree_cap)
    else:
        results = (
            _audit_state(xy, tris, interior, frame, counter, charge_cache, subtree_cap)
            for tris in states
        )

    for lhs, v_hist, rhs, mx, mx_at, ch_max, tv, viol in results:
        count += 1
        lhs_total += lhs
        rhs_total += rhs
        three_vints += tv
        for d, c in v_hist.items():
            degree_totals[d] = degree_totals.get(d, 0) + c
        if mx_at is not None and (
            mx > max_charge or (mx == max_charge and (max_at is None or mx_at < max_at))
        ):
            max_charge = mx
            max_at = mx_at
        for d, c in ch_max.items():
            if c > charger_max.get(d, 0):
                charger_max[d] = c
        violations.extend(viol)

    if lhs_total != rhs_total:
        violations.append(
            f"charge conservation broken: sum(7-deg)={lhs_total} but received={rhs_total}"
        )
    vhat3 = Fraction(degree_totals.get(3, 0), count) if count else None
    if n >= 1 and vhat3 is not None and vhat3 * 30 < n:
        violations.append(f"vhat3 * 30 = {vhat3 * 30} < n = {n}")
    if max_at is None:
        max_charge = Fraction(0)
    return AuditReport(
        n=n,
        triangulation_count=count,
        conservation_lhs=lhs_total,
        conservation_rhs=rhs_total,
        max_charge=max_charge,
        max_charge_at=max_at,
        charger_count_max=charger_max,
        vhat3=vhat3,
        degree_totals=dict(sorted(degree_totals.items())),
        violations=violations,
        exceeds_believed_max=max_charge > BELIEVED_MAX_CHARGE,
        three_vint_count=three_vints,
    )


_WORKER_CTX: dict = {}


def _audit_worker_init(points, interior, frame, subtree_cap):
    _WORKER_CTX["xy"] = [(p.x, p.y) for p in points]
    _WORKER_CTX["points"] = points
    _WORKER_CTX["interior"] = interior
    _WORKER_CTX["frame"] = frame
    _WORKER_CTX["cap"] = subtree_cap
    _WORKER_CTX["counter"] = _PolygonCounter(points)
    _WORKER_CTX["cache"] = {}


def _audit_worker(chunk):
    out = []
    for tris in chunk:
        out.append(
            _audit_state(
                _WORKER_CTX["xy"],
                tris,
                _WORKER_CTX["interior"],
                _WORKER_CTX["frame"],
                _WORKER_CTX["counter"],
                _WORKER_CTX["cache"],
                _WORKER_CTX["cap"],
            )
        )
    return out


def _audit_parallel(P, states, jobs, subtree_cap):
    import multiprocessing as mp

    def chunks(it, size):
        buf = []
        for s in it:
            buf.append(s)
            if len(buf) >= size:
                yield buf
                buf = []
        if buf:
            yield buf

    with mp.Pool(
        jobs,
        initializer=_audit_worker_init,
        initargs=(P.points, list(P.interior_indices()), list(P.frame_indices()), subtree_cap),
    ) as pool:
        for batch in pool.imap(_audit_worker, chunks(states, 512)):
            yield from batch


# ---------------------------------------------------------------------------
# structural rules
# ---------------------------------------------------------------------------


@dataclass
class RulesReport:
    """Outcome of the structural property sweep over an instance.

    rule1: a rigid level-1/2 edge with two non-rigid children can be
    freed by flipping at most one of them.  monotone: supports never
    grow along a down-flip.  support_bound: 1 <= supp <= C_{deg-2} with
    equality exactly for convex holes.
    """

    rule1_checked: int = 0
    monotone_checked: int = 0
    support_checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _link_cycles(tris) -> dict[int, list[int]]:
    succ: dict[int, dict[int, int]] = {}
    for a, b, c in tris:
        succ.setdefault(a, {})[b] = c
        succ.setdefault(b, {})[c] = a
        succ.setdefault(c, {})[a] = b
    return succ


def _cycle_from(succ: dict[int, int]) -> list[int] | None:
    start = min(succ)
    cyc = [start]
    cur = succ[start]
    while cur != start:
        cyc.append(cur)
        if len(cyc) > len(succ):
            return None
        cur = succ[cur]
    return cyc if len(cyc) == len(succ) else None


def _hole_convex(xy, cycle) -> bool:
    k = len(cycle)
    for i in range(k):
        a, b, c = cycle[i], cycle[(i + 1) % k], cycle[(i + 2) % k]
        ax, ay = xy[a]
        bx, by = xy[b]
        cx, cy = xy[c]
        if (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) <= 0:
            return False
    return True


def check_structural_rules(P: AugmentedPointSet) -> RulesReport:
    """Sweep every vint of every triangulation for the cheap invariants."""
    from .enumeration import flip_graph_states

    xy = [(p.x, p.y) for p in P.points]
    interior = set(P.interior_indices())
    counter = _PolygonCounter(P.points)
    rep = RulesReport()

    for tris in flip_graph_states(P):
        succ_all = _link_cycles(tris)
        amap = edge_apex_map(tris)
        for p in interior:
            cyc = _cycle_from(succ_all[p])
            if cyc is None:
                rep.violations.append(f"point {p} link is not a single cycle")
                continue
            d = len(cyc)
            supp = counter.count(tuple(cyc))
            bound = catalan(d - 2)
            convex = _hole_convex(xy, cyc)
            rep.support_checked += 1
            if not 1 <= supp <= bound:
                rep.violations.append(f"support {supp} outside [1, {bound}]")
            if (supp == bound) != convex:
                rep.violations.append(
                    f"support {supp} vs bound {bound}: convexity mismatch at point {p}"
                )
            # Monotonicity along each single down-flip at p.
            for idx, x in enumerate(cyc):
                if d <= 3:
                    break
                alpha = cyc[(idx - 1) % d]
                beta = cyc[(idx + 1) % d]
                # Edge (p, x) flips iff the quad (p, alpha, x, beta) is
                # strictly convex, i.e. alpha-beta crosses p-x.
                if not _cross(xy, alpha, beta, p, x):
                    continue
                reduced = tuple(cyc[:idx] + cyc[idx + 1 :])
                supp_after = counter.count(reduced)
                rep.monotone_checked += 1
                if supp < supp_after:
                    rep.violations.append(
                        f"support grew {supp} -> {supp_after} along down-flip at {p}"
                    )
            if d == 3:
                tree = build_flip_tree_raw(xy, tris, p, link=cyc)
                for node in tree.nodes():
                    if node.level > 2 or not node.rigid or len(node.children) != 2:
                        continue
                    e1, e2 = node.children
                    if e1.rigid or e2.rigid:
                        continue
                    rep.rule1_checked += 1
                    frees1 = _cross(xy, node.opp, e1.apex, *node.dual)
                    frees2 = _cross(xy, node.opp, e2.apex, *node.dual)
                    if frees1 and frees2:
                        rep.violations.append(
                            f"both children of a rigid edge can free it at point {p}"
                        )
    return rep
