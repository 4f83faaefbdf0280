"""Decide which unions of closed geodesics on the sphere, projective plane,
torus and Klein bottle form atoms (two-colorable singular levels)."""

from .atom_check import (
    AtomVerdict,
    ClosedWalk,
    Coloring,
    CurveSystem,
    OddWitness,
    curve_system,
    is_atom,
    klein_loop_cell_check,
    klein_odd_selfint_reject,
    klein_segment_orientation,
    klein_split_check,
    orientation_change,
    prop1_check,
    statement1_check,
    torus_parity_check,
    two_color,
    u_count,
    validate_admissible,
)
from .catalog import CONSTRUCTIONS, build_named, invariant_table, verify_theorem1
from .geodesic_arrangements import (
    FlatGeodesicSpec,
    GreatCircleSpec,
    flat_arrangement,
    intersection_count,
    rp2_quotient,
    search_spec,
    self_intersection_count,
    sphere_arrangement,
)
from .surface_map import (
    EmbeddedGraph,
    SurfaceKind,
    canonical_code,
    classify_surface,
    euler_characteristic,
    isomorphic,
    orientability,
    trace_faces,
)

__version__ = "0.1.0"
