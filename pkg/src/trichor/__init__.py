"""trichor: exact triangulation enumeration and charging-scheme audits.

The package enumerates every triangulation of a small planar point set
by flip-graph traversal, counts triangulations of simple polygons and
the Catalan variants exactly, builds flip-trees and rigid cores for
degree-3 vertices, and audits the charge that every 3-vint receives.
"""

from .bounds import BoundEntry, bounds_csv, derived_bounds
from .charging import (
    AuditReport,
    ChargeContribution,
    ChargeReport,
    FlipTree,
    FlipTreeNode,
    RigidCore,
    RulesReport,
    StarHole,
    SubtreeInfo,
    Vint,
    audit,
    build_flip_tree,
    charge,
    check_structural_rules,
    contr_minus,
    contr_plus,
    contr_plus_census,
    contr_plus_closed_form,
    enumerate_charging_vints,
    hole_of,
    rigid_core,
    support,
)
from .enumeration import (
    EnumerationResult,
    V3RecursionReport,
    check_v3_recursion,
    enumerate_all,
    tri_upper_bound,
    vhat,
)
from .errors import (
    CapExceededError,
    CollinearTripleError,
    CrossingChordsError,
    DuplicatePointError,
    ExhaustedRetriesError,
    HasDeepEdgesError,
    InvalidChordError,
    NotA3VintError,
    NotFlippableError,
    NotSimpleError,
    OutOfRangeError,
    TooLargeError,
    TrichorError,
    UnknownEdgeError,
)
from .geometry import (
    CCW,
    COLLINEAR,
    CW,
    AugmentedPointSet,
    Point,
    PointSet,
    augment,
    gen_convex,
    gen_convex_arc_in_triangle,
    gen_random,
    orient,
    read_points,
    validate_general_position,
    write_points,
)
from .polygons import (
    Chord,
    SimplePolygon,
    brute_force_count,
    catalan,
    catalan_generalized,
    count_triangulations,
    read_polygon,
    reflex_template,
    tr_with_chords,
    write_polygon,
)
from .triangulation import (
    DegreeVector,
    EdgeRef,
    Triangulation,
    degree_vector,
    fingerprint,
    flip,
    initial_triangulation,
    is_flippable,
)

__version__ = "0.1.0"
