import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from geoatoms import atom_check as ac
from geoatoms.errors import DegenerateInputError, GeneralPositionError
from geoatoms.geodesic_arrangements import (
    KLEIN,
    RP2,
    SPHERE,
    TORUS,
    FlatGeodesicSpec as F,
    GreatCircleSpec as G,
    build,
    canonical,
    intersection_count,
    period,
    rp2_quotient,
    search_spec,
    self_intersection_count,
    sphere_arrangement,
)
from geoatoms.surface_map import classify_surface


# --- independent oracle: draw the geodesics in a fundamental domain --------
#
# The domain is the square [A, A+1) x [B, B+1).  A and B have a prime
# denominator larger than any denominator a crossing can have, so no crossing
# lies on a side.  Each geodesic is followed piece by piece, gluing the sides
# by hand, until it returns to its first entry state; crossings are exact
# intersections of drawn pieces.

A, B = Fraction(1, 1009), Fraction(1, 1013)


def _into_domain(x, y, dx, surface):
    k = -math.floor(y - B)
    eps = (-1) ** (k % 2) if surface is KLEIN else 1
    x, dx = eps * x, eps * dx
    return x - math.floor(x - A), y + k, dx


def _pieces(spec, surface):
    x, y = spec.base_point()
    dy = spec.direction[1]
    x, y, dx = _into_domain(x, y, spec.direction[0], surface)
    pieces, start = [], None
    for _ in range(10000):
        ts = []
        for lo, pos, vel in ((A, x, dx), (B, y, dy)):
            if vel > 0:
                ts.append((lo + 1 - pos) / vel)
            elif vel < 0:
                ts.append((lo - pos) / vel)
        t = min(ts)
        ex, ey = x + t * dx, y + t * dy
        pieces.append(((x, y), (ex, ey)))
        # step just past the side, then glue back into the domain
        x, y, dx = _into_domain(ex + dx * Fraction(1, 10 ** 9), ey + dy * Fraction(1, 10 ** 9),
                                dx, surface)
        x, y = x - dx * Fraction(1, 10 ** 9), y - dy * Fraction(1, 10 ** 9)
        state = (x, y, dx)
        if start is None:
            start, pieces = state, []
        elif state == start:
            return pieces
    raise AssertionError("geodesic did not close")


def _meet(a, b):
    (p1, p2), (p3, p4) = a, b
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (p4[0] - p3[0], p4[1] - p3[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    rx, ry = p3[0] - p1[0], p3[1] - p1[1]
    s = (rx * d2[1] - ry * d2[0]) / den
    t = (rx * d1[1] - ry * d1[0]) / den
    if 0 <= s <= 1 and 0 <= t <= 1:
        return (p1[0] + s * d1[0], p1[1] + s * d1[1])
    return None


def drawn_crossings(specs, surface):
    """Map from crossing point to the number of branch pairs meeting there."""
    drawn = [piece for s in specs for piece in _pieces(s, surface)]
    points = {}
    for a, b in combinations(drawn, 2):
        x = _meet(a, b)
        if x is not None:
            points[x] = points.get(x, 0) + 1
    return points


def _primitive_ok(p, q):
    return math.gcd(p, q) == 1


flat_specs_st = st.tuples(st.integers(0, 3), st.integers(-3, 3), st.integers(0, 11),
                          st.integers(1, 5)).filter(lambda t: _primitive_ok(t[0], t[1])).map(
    lambda t: F(t[0], t[1], Fraction(t[2] % t[3], t[3])))


@pytest.mark.parametrize("surface", [TORUS, KLEIN])
@given(specs=st.lists(flat_specs_st, min_size=1, max_size=3))
def test_vertex_count_matches_drawing(surface, specs):
    canon = [canonical(s, surface) for s in specs]
    assume(len(set(canon)) == len(canon))
    try:
        g, c, arr = build(surface, specs)
    except GeneralPositionError:
        # three branches through one point meet pairwise three times
        assert max(drawn_crossings(canon, surface).values()) > 1
        return
    pts = drawn_crossings(canon, surface)
    assert set(pts.values()) <= {1}
    assert g.num_vertices == len(pts)
    for k in range(len(canon)):
        self_pts = c.self_crossings(k) if g.num_vertices else 0
        assert self_pts == self_intersection_count(canon[k], surface)
    if g.num_vertices:
        inv = classify_surface(g)
        assert 2 * inv.v == inv.e


def test_torus_determinant_formula():
    rng = random.Random(2024)
    done = 0
    while done < 200:
        p1, q1, p2, q2 = (rng.randint(-5, 5) for _ in range(4))
        if not (_primitive_ok(p1, q1) and _primitive_ok(p2, q2)):
            continue
        a = F(p1, q1, Fraction(rng.randint(0, 6), 7))
        b = F(p2, q2, Fraction(rng.randint(0, 10), 11))
        det = abs(p1 * q2 - p2 * q1)
        if det == 0:
            continue
        g, _, _ = build(TORUS, [a, b])
        assert g.num_vertices == det == intersection_count(a, b, TORUS)
        done += 1


def _normals(rng, n):
    while True:
        ns = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(n)]
        if any(v == (0, 0, 0) for v in ns):
            continue
        if len({G(v) for v in ns}) < n:
            continue
        if any(_det(a, b, c) == 0 for a, b, c in combinations(ns, 3)):
            continue
        return ns


def _det(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_sphere_counts(n):
    rng = random.Random(n)
    for _ in range(5):
        g, c, _ = sphere_arrangement([G(v) for v in _normals(rng, n)])
        inv = classify_surface(g)
        assert (inv.v, inv.e, inv.f) == (n * (n - 1), 2 * n * (n - 1), n * (n - 1) + 2)
        assert ac.is_atom(g, c).is_atom


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_projective_counts(n):
    rng = random.Random(10 + n)
    for _ in range(5):
        g, c, _ = rp2_quotient([G(v) for v in _normals(rng, n)])
        inv = classify_surface(g)
        assert (inv.v, inv.e, inv.f) == (n * (n - 1) // 2, n * (n - 1), n * (n - 1) // 2 + 1)
        assert inv.surface is RP2
        assert all(c.reversing)
        assert ac.is_atom(g, c).is_atom == (n % 2 == 0)


def test_octahedral_arrangement():
    g, c, _ = sphere_arrangement([G((1, 0, 0)), G((0, 1, 0)), G((0, 0, 1))])
    inv = classify_surface(g)
    assert (inv.v, inv.e, inv.f) == (6, 12, 8)
    assert sorted(inv.face_degrees) == [3] * 8


def test_klein_meridians():
    # the two glide axes reverse orientation, other meridians and parallels do not
    for c_, reverses in ((0, True), (Fraction(1, 2), True), (Fraction(1, 3), False)):
        spec = F(0, 1, c_)
        T, h = period(spec, KLEIN)
        assert (h[0] == -1) == reverses
        assert T == (1 if reverses else 2)
    _, c, _ = build(KLEIN, [F(0, 1, 0), F(0, 1, Fraction(1, 2)), F(1, 0, Fraction(1, 2))])
    assert c.reversing == (True, True, False)


def test_klein_self_crossing_counts():
    assert self_intersection_count(F(1, 1, Fraction(1, 3)), KLEIN) == 2
    assert self_intersection_count(F(1, -2, Fraction(1, 3)), KLEIN) == 1
    assert self_intersection_count(F(1, 0, Fraction(1, 3)), KLEIN) == 0
    assert self_intersection_count(F(1, 2), TORUS) == 0


def test_klein_canonical_mirror():
    a = canonical(F(1, 1, Fraction(1, 3)), KLEIN)
    b = canonical(F(1, -1, Fraction(1, 3) - 1), KLEIN)
    assert a == b
    assert canonical(F(0, 1, Fraction(5, 2)), KLEIN) == canonical(F(0, 1, Fraction(1, 2)), KLEIN)


def test_edge_signs_follow_glide_crossings():
    for specs in ([F(1, -1, Fraction(1, 3))],
                  [F(1, 0, Fraction(1, 2)), F(1, -2, Fraction(1, 3))],
                  [F(0, 1, 0), F(0, 1, Fraction(1, 2)), F(1, -2, Fraction(1, 3))]):
        g, _, arr = build(KLEIN, specs)
        for e, arc in enumerate(arr.arcs):
            assert g.edge_sign[e] == (-1) ** arc.identifications.count("g")


def test_torus_edges_never_twist():
    g, _, _ = build(TORUS, [F(1, 0), F(1, 2, Fraction(1, 3)), F(2, 1, Fraction(1, 5))])
    assert set(g.edge_sign) == {1}


def test_coincident_geodesics_rejected():
    with pytest.raises(DegenerateInputError):
        build(TORUS, [F(1, 2, Fraction(1, 3)), F(-1, -2, Fraction(-1, 3))])
    with pytest.raises(DegenerateInputError):
        build(KLEIN, [F(0, 1, Fraction(1, 2)), F(0, 1, Fraction(5, 2))])
    with pytest.raises(DegenerateInputError):
        sphere_arrangement([G((1, 2, 3)), G((-2, -4, -6))])
    with pytest.raises(DegenerateInputError):
        intersection_count(G((1, 0, 0)), G((2, 0, 0)), SPHERE)


def test_triple_points_rejected():
    with pytest.raises(GeneralPositionError) as info:
        build(TORUS, [F(1, 0), F(0, 1), F(1, 1)])
    assert info.value.point == (0, 0)
    with pytest.raises(GeneralPositionError):
        sphere_arrangement([G((1, 0, 0)), G((0, 1, 0)), G((1, 1, 0))])


def test_bad_specs():
    with pytest.raises(DegenerateInputError):
        F(0, 0)
    with pytest.raises(DegenerateInputError):
        F(2, 4)
    with pytest.raises(DegenerateInputError):
        G((0, 0, 0))


def test_lonely_geodesic_is_not_admissible():
    g, c, _ = build(TORUS, [F(1, 0)])
    assert g.num_vertices == 0
    assert ac.is_atom(g, c).reason == "no_intersections"


def test_construction_is_deterministic():
    specs = [F(0, 1, 0), F(0, 1, Fraction(1, 2)), F(1, -2, Fraction(1, 3))]
    first = build(KLEIN, specs)
    again = build(KLEIN, list(reversed(specs)))
    assert build(KLEIN, specs)[0] == first[0]
    assert first[0].num_vertices == again[0].num_vertices


def test_search_finds_klein_two_self_crossings():
    found = search_spec(KLEIN, curves=1, self_crossings=2, max_coord=1, max_den=3)
    assert found
    assert all(self_intersection_count(s[0], KLEIN) == 2 for s in found)
    assert all(abs(s[0].q) == 1 for s in found)


def test_search_pairs_on_torus():
    found = search_spec(TORUS, curves=2, cross=2, max_coord=2, max_den=1)
    assert found
    for a, b in found:
        assert abs(a.p * b.q - a.q * b.p) == 2


def test_search_impossible_target_is_empty():
    assert search_spec(KLEIN, curves=1, self_crossings=3, simple=True) == []
    assert search_spec(TORUS, curves=1, self_crossings=1, max_coord=2, max_den=2) == []


def test_search_refuses_round_surfaces():
    with pytest.raises(ValueError):
        search_spec(SPHERE)
