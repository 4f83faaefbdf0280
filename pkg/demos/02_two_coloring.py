"""Atoms are two-colorable: coloring, odd witnesses and the walk criterion."""

from fractions import Fraction

from geoatoms import atom_check as ac
from geoatoms.geodesic_arrangements import KLEIN, RP2, FlatGeodesicSpec, GreatCircleSpec, build

# Two projective lines cross once; the complement is a single square cell
# glued to itself so that the colors alternate.
g, c, _ = build(RP2, [GreatCircleSpec((1, 0, 0)), GreatCircleSpec((0, 1, 0))])
verdict = ac.is_atom(g, c)
print(verdict.describe(), "coloring", verdict.coloring.colors)

# Three lines: four triangles, and a chain of three of them closes up.
g, c, _ = build(RP2, [GreatCircleSpec(n) for n in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
verdict = ac.is_atom(g, c)
print(verdict.describe())
print("witness replays:", verdict.witness.replay(g))

# The same failure seen through closed walks: some simple closed walk changes
# orientation an odd number of times relative to its straight passages.
walk = ac.statement1_check(g, c)
print("violating walk", walk.darts, "moves", walk.moves,
      "u =", walk.u, "orientation change =", ac.orientation_change(walk, g))

# Brute force over all 2^F colorings agrees.
print("proper colorings found by enumeration:", len(ac.brute_force_colorable(g)))

# On the Klein bottle a geodesic with a single self-crossing leaves a cell
# that touches itself across an edge: an odd chain of length one.
g, c, _ = build(KLEIN, [FlatGeodesicSpec(1, -2, Fraction(1, 3))])
verdict = ac.is_atom(g, c)
print(verdict.describe(), "| odd self-crossing rule:", ac.klein_odd_selfint_reject(c))
