"""Closed geodesics on the flat torus and Klein bottle."""

from fractions import Fraction

from geoatoms import atom_check as ac
from geoatoms.geodesic_arrangements import (
    KLEIN,
    TORUS,
    FlatGeodesicSpec as F,
    build,
    intersection_count,
    period,
    search_spec,
    self_intersection_count,
)

# On the torus two geodesics of classes (p1,q1), (p2,q2) meet |p1 q2 - p2 q1| times.
a, b = F(1, 0), F(1, 2, Fraction(1, 3))
print("torus crossings:", intersection_count(a, b, TORUS))
g, c, _ = build(TORUS, [a, b])
print("C1:", ac.is_atom(g, c).describe())

# An odd count can never give an atom.
g, c, _ = build(TORUS, [F(1, 0), F(1, 1, Fraction(1, 2))])
print("(1,0)+(1,1):", ac.is_atom(g, c).describe(), "| parity rule flags curve", ac.torus_parity_check(c))

# On the Klein bottle only the two glide axes x = 0 and x = 1/2 reverse
# orientation; other vertical geodesics wrap around twice.
for x0 in (0, Fraction(1, 2), Fraction(1, 3)):
    T, deck = period(F(0, 1, x0), KLEIN)
    print(f"meridian x={x0}: period {T}, closes up under {deck}")

# Slanted Klein geodesics may cross themselves.
for spec in (F(1, 0, Fraction(1, 3)), F(1, 1, Fraction(1, 3)), F(1, -2, Fraction(1, 3)), F(3, -2, Fraction(1, 3))):
    print(spec, "self-crossings:", self_intersection_count(spec, KLEIN))

# Search for one-curve systems with two self-crossings that are atoms.
for specs in search_spec(KLEIN, curves=1, self_crossings=2, max_coord=2, max_den=3, atoms_only=True):
    print("atom:", ", ".join(map(str, specs)))
