import random

import pytest
from hypothesis import given

from geoatoms.errors import ConnectivityError, StructureError
from geoatoms.surface_map import (
    EmbeddedGraph,
    SurfaceKind,
    canonical_code,
    classify_surface,
    components,
    euler_characteristic,
    flip_vertex,
    from_rotations,
    from_text,
    isomorphic,
    mirror,
    orientability,
    random_relabel,
    to_text,
    trace_faces,
)

from conftest import quartic_maps

TORUS, KLEIN = SurfaceKind.TORUS, SurfaceKind.KLEIN_BOTTLE

# one vertex, two loops interleaved: the standard torus bouquet
BOUQUET = from_rotations([(0, 2, 1, 3)], surface=TORUS)
# same rotation with one twisted loop lives on the Klein bottle
TWISTED = from_rotations([(0, 2, 1, 3)], (1, -1), surface=KLEIN)
# two circles meeting twice on the sphere
TWO_CIRCLES = from_rotations([(0, 2, 5, 7), (1, 6, 4, 3)], surface=SurfaceKind.SPHERE)


def test_bouquet_is_one_square():
    faces = trace_faces(BOUQUET)
    assert [f.degree for f in faces] == [4]
    inv = classify_surface(BOUQUET)
    assert (inv.v, inv.e, inv.f, inv.chi, inv.orientable) == (1, 2, 1, 0, True)
    assert inv.surface is TORUS and inv.cellular_on_claimed


def test_twisted_bouquet_is_klein():
    inv = classify_surface(TWISTED)
    assert (inv.chi, inv.orientable) == (0, False)
    assert inv.surface is KLEIN and inv.cellular_on_claimed


def test_two_circles_on_sphere():
    inv = classify_surface(TWO_CIRCLES)
    assert (inv.v, inv.e, inv.f) == (2, 4, 4)
    assert inv.surface is SurfaceKind.SPHERE
    assert sorted(inv.face_degrees) == [2, 2, 2, 2]


def test_claimed_surface_mismatch_is_not_cellular():
    g = from_rotations(BOUQUET.rotations, surface=KLEIN)
    assert not classify_surface(g).cellular_on_claimed


def test_every_edge_side_in_exactly_one_face(atoms):
    for g, _, _ in atoms.values():
        seen = [f for face in trace_faces(g) for f in face.flags]
        sides = {(d, s) for d in range(g.num_darts) for s in (1, -1)}
        # each face is traced along one of its two mirror orbits, so every
        # edge side is used once: 2 * E flags in total
        assert len(seen) == len(set(seen)) == 2 * g.num_edges
        assert set(seen) <= sides


def test_faces_across_each_edge(atoms):
    for g, _, _ in atoms.values():
        for e in range(g.num_edges):
            a, b = g.faces_across(e)
            assert 0 <= a < len(trace_faces(g)) and 0 <= b < len(trace_faces(g))


def test_invalid_rotation_systems():
    with pytest.raises(StructureError):
        EmbeddedGraph(((0, 1, 2),), (1, 1))
    with pytest.raises(StructureError):
        EmbeddedGraph(((0, 1, 2, 2),), (1, 1))
    with pytest.raises(StructureError):
        EmbeddedGraph(((0, 1, 2, 3),), (1, 0))


def test_disconnected_canonical_code_refused():
    g = from_rotations([(0, 1), (2, 3)])
    assert len(components(g)) == 2
    with pytest.raises(ConnectivityError):
        canonical_code(g)


@given(quartic_maps())
def test_flip_preserves_embedding(g):
    for v in range(g.num_vertices):
        h = flip_vertex(g, v)
        assert euler_characteristic(h) == euler_characteristic(g)
        assert orientability(h) == orientability(g)
        assert sorted(f.degree for f in trace_faces(h)) == sorted(f.degree for f in trace_faces(g))
        if g.is_connected():
            assert canonical_code(h) == canonical_code(g)


@given(quartic_maps())
def test_mirror_is_isomorphic(g):
    if g.is_connected():
        assert isomorphic(g, mirror(g))


def test_relabelling_keeps_canonical_code(atoms, synthetic):
    rng = random.Random(7)
    graphs = [g for g, _, _ in atoms.values()] + list(synthetic.values())
    for i in range(100):
        g = graphs[i % len(graphs)]
        h = random_relabel(g, rng)
        assert canonical_code(h) == canonical_code(g)
        assert isomorphic(g, h, respect_colors=True)


def test_c1_and_e1_differ(atoms):
    c1 = atoms["C1@T2"][0]
    e1 = atoms["E1@T2"][0]
    c2 = atoms["C2tilde@KL"][0]
    assert not isomorphic(c1, e1)
    assert not isomorphic(c1, c2)
    assert canonical_code(c1) != canonical_code(c2)


def test_text_round_trip(atoms):
    for g, _, _ in atoms.values():
        h = from_text(to_text(g))
        assert h == g


def test_surface_labels():
    for kind in SurfaceKind:
        assert SurfaceKind.from_label(kind.label) is kind
        assert SurfaceKind.from_invariants(kind.euler_characteristic, kind.orientable) is kind
    assert SurfaceKind.from_invariants(-2, True) is None
    with pytest.raises(ValueError):
        SurfaceKind.from_label("mobius")
