"""Signed rotation systems: tracing faces and reading off the surface."""

from geoatoms.surface_map import (
    SurfaceKind,
    canonical_code,
    classify_surface,
    flip_vertex,
    from_rotations,
    isomorphic,
    to_text,
    trace_faces,
)

# One vertex with two loops.  Darts 0,1 form edge 0 and darts 2,3 form edge 1;
# interleaving them around the vertex gives the square torus.
torus = from_rotations([(0, 2, 1, 3)], surface=SurfaceKind.TORUS)
print(to_text(torus))
for face in trace_faces(torus):
    print("face darts", face.darts)
print(classify_surface(torus))

# Twisting one loop (sign -1) turns the same picture into a Klein bottle.
klein = from_rotations([(0, 2, 1, 3)], (1, -1), surface=SurfaceKind.KLEIN_BOTTLE)
inv = classify_surface(klein)
print("twisted:", inv.surface.label, "chi", inv.chi, "orientable", inv.orientable)

# Reversing the local orientation at a vertex changes the encoding but not
# the embedded graph, so the canonical code stays put.
flipped = flip_vertex(klein, 0)
print("flipped rotation", flipped.rotations, "signs", flipped.edge_sign)
print("same canonical code:", canonical_code(flipped) == canonical_code(klein))
print("torus ~ klein:", isomorphic(torus, klein))

# Claiming the wrong surface is caught by the Euler characteristic check.
wrong = from_rotations([(0, 2, 1, 3)], surface=SurfaceKind.KLEIN_BOTTLE)
print("untwisted bouquet cellular on the Klein bottle?", classify_surface(wrong).cellular_on_claimed)
