"""Exact arrangements of closed geodesics on the four constant-curvature
model surfaces.

Flat surfaces are quotients of the plane.  The torus is the plane modulo the
unit translations; the Klein bottle is the plane modulo the group generated by
``t(x, y) = (x + 1, y)`` and the glide reflection ``g(x, y) = (1 - x, y + 1)``.
Every deck transformation has the form ``(x, y) -> (eps * x + a, y + b)``
with integers ``a, b`` (``eps = (-1) ** b`` on the Klein bottle, ``+1`` on the
torus), which we store as the triple ``(eps, a, b)``.

A flat closed geodesic is the image of the line ``q*x - p*y = c``.  It is
parametrized by ``s -> base + s * (p, q)`` for ``s`` in ``[0, T)`` where
``T`` is the period.  Two parameters ``s`` (on A) and ``t`` (on B) give the same
point of the surface exactly when ``A(s) = h(B(t))`` for a deck element ``h``;
we find every such pair by solving a 2x2 rational system over the finitely
many ``h`` that can bring one period of B across one period of A.

Great circles are handled with integer vectors only: intersection points are
``+-(n_i x n_j)`` and every ordering decision is a sign of a determinant.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Sequence

from .atom_check import CurveSystem
from .errors import DegenerateInputError, GeneralPositionError
from .surface_map import EmbeddedGraph, SurfaceKind

Rational = Fraction

TORUS = SurfaceKind.TORUS
KLEIN = SurfaceKind.KLEIN_BOTTLE
SPHERE = SurfaceKind.SPHERE
RP2 = SurfaceKind.PROJECTIVE_PLANE


# --- specs -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class FlatGeodesicSpec:
    """Closed geodesic carried by the line ``q*x - p*y = c``."""

    p: int
    q: int
    c: Fraction = Fraction(0)

    def __post_init__(self):
        p, q, c = int(self.p), int(self.q), Fraction(self.c)
        if p == 0 and q == 0:
            raise DegenerateInputError("direction (0, 0)")
        if math.gcd(p, q) != 1:
            raise DegenerateInputError(f"direction ({p}, {q}) is not primitive")
        if p < 0 or (p == 0 and q < 0):
            p, q, c = -p, -q, -c
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "c", c)

    @property
    def direction(self) -> tuple:
        return (self.p, self.q)

    def base_point(self) -> tuple:
        if self.q != 0:
            return (self.c / self.q, Fraction(0))
        return (Fraction(0), -self.c / self.p)

    def point(self, s) -> tuple:
        x0, y0 = self.base_point()
        return (x0 + s * self.p, y0 + s * self.q)

    def __str__(self):
        return f"({self.p},{self.q};{self.c})"


@dataclass(frozen=True, order=True)
class GreatCircleSpec:
    """Great circle ``{x : normal . x = 0}`` on the unit sphere."""

    normal: tuple

    def __post_init__(self):
        n = tuple(int(v) for v in self.normal)
        if len(n) != 3 or n == (0, 0, 0):
            raise DegenerateInputError(f"bad normal {self.normal!r}")
        object.__setattr__(self, "normal", _primitive_rep(n))

    def __str__(self):
        return "circle(%d,%d,%d)" % self.normal


def _primitive(v: tuple) -> tuple:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v)


def _primitive_rep(v: tuple) -> tuple:
    """Primitive vector with first nonzero coordinate positive."""
    v = _primitive(v)
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


def offset_modulus(spec: FlatGeodesicSpec, surface: SurfaceKind) -> int:
    """Offsets ``c`` and ``c + m`` describe the same geodesic for every
    integer multiple ``m`` of this modulus."""
    if surface is TORUS:
        return 1
    return 2 if spec.q % 2 == 0 else 1


def canonical(spec: FlatGeodesicSpec, surface: SurfaceKind) -> FlatGeodesicSpec:
    """Lexicographically least spec describing the same closed geodesic."""
    m = offset_modulus(spec, surface)
    cands = [FlatGeodesicSpec(spec.p, spec.q, spec.c % m)]
    if surface is KLEIN:
        # image under the glide (eps, a, b) = (-1, 0, 1): q x - p y = c maps
        # to -q x - p y = c - p, i.e. direction (p, -q) with offset c - p
        mirrored = FlatGeodesicSpec(spec.p, -spec.q, spec.c - spec.p)
        mm = offset_modulus(mirrored, surface)
        cands.append(FlatGeodesicSpec(mirrored.p, mirrored.q, mirrored.c % mm))
    elif surface is not TORUS:
        raise ValueError(f"flat specs live on the torus or Klein bottle, not {surface}")
    return min(cands, key=lambda s: (s.p, s.q, s.c))


def period(spec: FlatGeodesicSpec, surface: SurfaceKind) -> tuple:
    """``(T, stabilizer)``: parameter length of one turn and the deck element
    ``(eps, a, b)`` carrying ``spec.point(s)`` to ``spec.point(s + T)``."""
    p, q = spec.p, spec.q
    if surface is TORUS:
        return Fraction(1), (1, p, q)
    if p == 0:
        x0 = spec.c  # the line is x = c
        if (2 * x0).denominator == 1:
            # glide axis: (x, y) -> (2c - x, y + 1) fixes the line
            return Fraction(1), (-1, int(2 * x0), 1)
        return Fraction(2), (1, 0, 2)
    if q % 2 == 0:
        return Fraction(1), (1, p, q)
    return Fraction(2), (1, 2 * p, 2 * q)


def deck_apply(h: tuple, pt: tuple) -> tuple:
    eps, a, b = h
    return (eps * pt[0] + a, pt[1] + b)


def reduce_to_domain(pt: tuple, surface: SurfaceKind) -> tuple:
    """Deck element moving ``pt`` into the unit square ``[0,1)^2`` and the
    image point."""
    b = -math.floor(pt[1])
    eps = (-1) ** (b % 2) if surface is KLEIN else 1
    a = -math.floor(eps * pt[0])
    h = (eps, a, b)
    return h, deck_apply(h, pt)


# --- crossings of flat geodesics -------------------------------------------

@dataclass(frozen=True)
class FlatCrossing:
    """``A.point(s) == h(B.point(t))``."""

    i: int
    s: Fraction
    j: int
    t: Fraction
    h: tuple


def _interval(terms) -> tuple:
    lo = hi = Fraction(0)
    for const, coeff, length in terms:
        lo += const
        hi += const
        ext = coeff * length
        lo += min(0, ext)
        hi += max(0, ext)
    return lo, hi


def flat_crossings(A: FlatGeodesicSpec, B: FlatGeodesicSpec, surface: SurfaceKind,
                   same: bool = False) -> list:
    """Parameter pairs ``(s, t, h)`` with ``s`` in one period of A and ``t`` in
    one period of B where the two geodesics cross.  With ``same`` the pairs
    are self-crossings (both orders are returned)."""
    TA, _ = period(A, surface)
    TB, _ = period(B, surface)
    (xA, yA), (xB, yB) = A.base_point(), B.base_point()
    pA, qA, pB, qB = A.p, A.q, B.p, B.q
    out = []
    blo, bhi = _interval([(yA - yB, 0, 0), (0, qA, TA), (0, -qB, TB)])
    for b in range(math.floor(blo), math.ceil(bhi) + 1):
        eps = (-1) ** (b % 2) if surface is KLEIN else 1
        alo, ahi = _interval([(xA - eps * xB, 0, 0), (0, pA, TA), (0, -eps * pB, TB)])
        det = -pA * qB + eps * pB * qA
        for a in range(math.floor(alo), math.ceil(ahi) + 1):
            rhs1 = eps * xB + a - xA
            rhs2 = yB + b - yA
            if det == 0:
                if not same and qA * (eps * xB + a) - pA * (yB + b) == A.c:
                    raise DegenerateInputError(f"geodesics {A} and {B} share a carrier line")
                continue
            s = (-qB * rhs1 + eps * pB * rhs2) / det
            t = (pA * rhs2 - qA * rhs1) / det
            if 0 <= s < TA and 0 <= t < TB:
                out.append((s, t, (eps, a, b)))
    out.sort()
    return out


def intersection_count(a, b, surface: SurfaceKind) -> int:
    """Number of crossing points of two distinct closed geodesics."""
    if surface is SPHERE or surface is RP2:
        a, b = GreatCircleSpec(a.normal), GreatCircleSpec(b.normal)
        if a == b:
            raise DegenerateInputError("identical great circles")
        return 2 if surface is SPHERE else 1
    a, b = canonical(a, surface), canonical(b, surface)
    if a == b:
        raise DegenerateInputError("identical geodesics")
    if surface is TORUS:
        return abs(a.p * b.q - b.p * a.q)
    return len(flat_crossings(a, b, surface))


def self_intersection_count(spec: FlatGeodesicSpec, surface: SurfaceKind = KLEIN) -> int:
    return len(flat_crossings(spec, spec, surface, same=True)) // 2


# --- assembly ----------------------------------------------------------------

@dataclass(frozen=True)
class Incidence:
    """One branch of a curve through a vertex.

    ``eps`` is the orientation of the map from the vertex chart to the lift of
    the curve at this point; ``direction`` is the curve's forward tangent
    expressed in the vertex chart.
    """

    key: object
    eps: int
    direction: tuple
    param: object = None


@dataclass(frozen=True)
class Arc:
    curve: int
    start: int
    end: int
    s0: object = None
    s1: object = None
    identifications: tuple = ()


@dataclass
class Arrangement:
    surface: SurfaceKind
    specs: tuple
    vertices: list = field(default_factory=list)
    arcs: list = field(default_factory=list)
    incidences: list = field(default_factory=list)


def _ccw_sorted(items, cross, dot):
    ref = items[0][1]

    def half(v):
        c = cross(ref, v)
        return 0 if c > 0 or (c == 0 and dot(ref, v) > 0) else 1

    def cmp(a, b):
        ha, hb = half(a[1]), half(b[1])
        if ha != hb:
            return ha - hb
        c = cross(a[1], b[1])
        return -1 if c > 0 else (1 if c < 0 else 0)

    out = [d for d, _ in sorted(items, key=cmp_to_key(cmp))]
    k = out.index(min(out))
    return tuple(out[k:] + out[:k])


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _assemble(surface, curve_incs, wrap_eps, sort_at):
    """Build the signed rotation system and curve system from the ordered
    incidences of every curve.  ``sort_at(key, [(dart, direction)])`` returns
    the counterclockwise rotation at a vertex."""
    vertex_id = {}
    keys = []
    darts_at = defaultdict(list)
    signs = []
    through = {}
    curves = []
    arcs = []

    def vid(key):
        if key not in vertex_id:
            vertex_id[key] = len(keys)
            keys.append(key)
        return vertex_id[key]

    for i, incs in enumerate(curve_incs):
        m = len(incs)
        if m == 0:
            curves.append(())
            continue
        first = len(signs)
        for k in range(m):
            a, b = incs[k], incs[(k + 1) % m]
            wrap = k == m - 1
            e = len(signs)
            signs.append(a.eps * b.eps * (wrap_eps[i] if wrap else 1))
            va, vb = vid(a.key), vid(b.key)
            darts_at[va].append((2 * e, a.direction))
            darts_at[vb].append((2 * e + 1, tuple(-x for x in b.direction)))
            arcs.append(Arc(i, va, vb, a.param, b.param))
        for k in range(m):
            prev = first + (k - 1) % m
            cur = first + k
            through[2 * prev + 1] = 2 * cur
            through[2 * cur] = 2 * prev + 1
        curves.append(tuple(2 * (first + k) for k in range(m)))

    rotations = tuple(sort_at(keys[v], darts_at[v]) for v in range(len(keys)))
    g = EmbeddedGraph(rotations, tuple(signs), surface)
    through_t = tuple(through[d] for d in range(g.num_darts))
    reversing = []
    for i, curve in enumerate(curves):
        if curve:
            prod = 1
            for d in curve:
                prod *= g.sign(d)
            reversing.append(prod < 0)
        else:
            reversing.append(wrap_eps[i] < 0)
    c = CurveSystem(g, through_t, tuple(curves), tuple(reversing))
    return g, c, keys, arcs


def _check_distinct(specs):
    seen = {}
    for k, s in enumerate(specs):
        if s in seen:
            raise DegenerateInputError(
                f"geodesics {seen[s]} and {k} coincide ({s})")
        seen[s] = k


def flat_arrangement(surface: SurfaceKind, specs: Sequence[FlatGeodesicSpec]):
    """Arrangement of closed geodesics on the flat torus or Klein bottle.

    Returns ``(graph, curves, arrangement)``.  Vertex charts are the lifts in
    the unit square, so an arc's sign is ``-1`` exactly when it crosses the
    orientation-reversing side of the square an odd number of times.
    """
    if surface not in (TORUS, KLEIN):
        raise ValueError(f"flat arrangement needs torus or klein, got {surface}")
    specs = tuple(canonical(s, surface) for s in specs)
    _check_distinct(specs)
    n = len(specs)
    raw = []
    for i in range(n):
        for s, t, h in flat_crossings(specs[i], specs[i], surface, same=True):
            if s < t:
                raw.append(FlatCrossing(i, s, i, t, h))
        for j in range(i + 1, n):
            for s, t, h in flat_crossings(specs[i], specs[j], surface):
                raw.append(FlatCrossing(i, s, j, t, h))

    branch_count = Counter()
    for x in raw:
        branch_count[(x.i, x.s)] += 1
        branch_count[(x.j, x.t)] += 1
    for x in raw:
        if branch_count[(x.i, x.s)] > 1 or branch_count[(x.j, x.t)] > 1:
            _, pt = reduce_to_domain(specs[x.i].point(x.s), surface)
            raise GeneralPositionError(
                f"three or more branches meet at ({pt[0]}, {pt[1]})", point=pt)

    per_curve = defaultdict(list)
    for x in raw:
        X = specs[x.i].point(x.s)
        k0, Y = reduce_to_domain(X, surface)
        e0, eh = k0[0], x.h[0]
        pi, qi = specs[x.i].direction
        pj, qj = specs[x.j].direction
        per_curve[x.i].append(Incidence(Y, e0, (e0 * pi, qi), x.s))
        per_curve[x.j].append(Incidence(Y, e0 * eh, (e0 * eh * pj, qj), x.t))

    curve_incs = [sorted(per_curve[i], key=lambda inc: inc.param) for i in range(n)]
    wrap_eps = [period(s, surface)[1][0] for s in specs]

    def sort_at(key, items):
        return _ccw_sorted(items, _cross2, _dot)

    g, c, keys, arcs = _assemble(surface, curve_incs, wrap_eps, sort_at)
    if len(set(keys)) != len(keys):
        raise GeneralPositionError("two crossings project to the same point")
    arcs = [_with_identifications(arc, specs[arc.curve], surface) for arc in arcs]
    arr = Arrangement(surface, specs, list(keys), arcs, curve_incs)
    return g, c, arr


def _with_identifications(arc: Arc, spec: FlatGeodesicSpec, surface) -> Arc:
    """Record the sides of the unit square crossed strictly inside the arc
    (``'t'`` for the direct vertical side, ``'g'`` or ``'y'`` for the
    horizontal side on the Klein bottle / torus)."""
    T, _ = period(spec, surface)
    s0, s1 = arc.s0, arc.s1
    if s1 <= s0:
        s1 += T
    events = []
    for axis, label in ((0, "t"), (1, "g" if surface is KLEIN else "y")):
        comp = spec.direction[axis]
        if comp == 0:
            continue
        base = spec.base_point()[axis]
        lo, hi = sorted((base + s0 * comp, base + s1 * comp))
        for n in range(math.floor(lo) + 1, math.ceil(hi)):
            events.append(((n - base) / comp, label))
    events.sort()
    return Arc(arc.curve, arc.start, arc.end, arc.s0, arc.s1,
               tuple(label for _, label in events))


def sphere_arrangement(specs: Sequence[GreatCircleSpec]):
    """Arrangement of great circles on the round sphere."""
    specs = tuple(GreatCircleSpec(s.normal) for s in specs)
    _check_distinct(specs)
    normals = [s.normal for s in specs]
    n = len(specs)
    points_on = defaultdict(list)
    owner = {}
    for i, j in combinations(range(n), 2):
        w = _primitive(_cross3(normals[i], normals[j]))
        for k in range(n):
            if k not in (i, j) and _dot(w, normals[k]) == 0:
                raise GeneralPositionError(
                    f"circles {i}, {j}, {k} meet at {w}", point=w)
        for pt in (w, tuple(-x for x in w)):
            owner[pt] = (i, j)
            points_on[i].append(pt)
            points_on[j].append(pt)

    curve_incs = []
    for i in range(n):
        nv = normals[i]
        pts = points_on[i]
        if not pts:
            curve_incs.append([])
            continue
        order = _ccw_sorted([(pt, pt) for pt in pts],
                            lambda a, b: _dot(nv, _cross3(a, b)), _dot)
        curve_incs.append([Incidence(pt, 1, _cross3(nv, pt), pt) for pt in order])

    def sort_at(key, items):
        return _ccw_sorted(items, lambda a, b: _dot(key, _cross3(a, b)), _dot)

    g, c, keys, arcs = _assemble(SPHERE, curve_incs, [1] * n, sort_at)
    arr = Arrangement(SPHERE, specs, list(keys), arcs, curve_incs)
    return g, c, arr


def rp2_quotient(specs: Sequence[GreatCircleSpec]):
    """Arrangement of projective lines: great circles modulo the antipodal map.

    The representative of each point pair has its first nonzero coordinate
    positive; a branch seen at the other representative enters through the
    antipodal map, which reverses orientation.
    """
    _, _, sph = sphere_arrangement(specs)
    specs = sph.specs
    curve_incs = []
    for i, incs in enumerate(sph.incidences):
        if not incs:
            curve_incs.append([])
            continue
        half = incs[: len(incs) // 2]
        out = []
        for inc in half:
            pt = inc.key
            rep = _primitive_rep(pt)
            e = 1 if rep == pt else -1
            out.append(Incidence(rep, e, tuple(e * x for x in inc.direction), pt))
        curve_incs.append(out)
    # closing the half circle lands on the antipode of the first point
    wrap_eps = [-1] * len(specs)

    def sort_at(key, items):
        return _ccw_sorted(items, lambda a, b: _dot(key, _cross3(a, b)), _dot)

    g, c, keys, arcs = _assemble(RP2, curve_incs, wrap_eps, sort_at)
    arr = Arrangement(RP2, specs, list(keys), arcs, curve_incs)
    return g, c, arr


def build(surface: SurfaceKind, specs: Sequence):
    """Dispatch on the surface."""
    if surface is SPHERE:
        return sphere_arrangement(specs)
    if surface is RP2:
        return rp2_quotient(specs)
    return flat_arrangement(surface, specs)


# --- parameter search ------------------------------------------------------

def flat_specs(surface: SurfaceKind, max_coord: int, max_den: int) -> list:
    """All canonical flat geodesic specs with ``|p|, |q| <= max_coord`` and
    offset denominators up to ``max_den``, sorted."""
    out = set()
    for p in range(0, max_coord + 1):
        for q in range(-max_coord, max_coord + 1):
            if (p == 0 and q <= 0) or math.gcd(p, q) != 1:
                continue
            base = FlatGeodesicSpec(p, q, 0)
            m = offset_modulus(base, surface)
            for den in range(1, max_den + 1):
                for num in range(0, m * den):
                    if math.gcd(num, den) != 1 and not (num == 0 and den == 1):
                        continue
                    out.add(canonical(FlatGeodesicSpec(p, q, Fraction(num, den)), surface))
    return sorted(out, key=lambda s: (s.p, s.q, s.c))


def _as_list(value, n, name):
    if value is None or isinstance(value, int):
        return [value] * n
    value = list(value)
    if len(value) != n:
        raise ValueError(f"{name} needs {n} entries")
    return value


def search_spec(surface: SurfaceKind, curves: int = 1, self_crossings=None, cross=None,
                max_coord: int = 3, max_den: int = 4, simple: bool = False,
                atoms_only: bool = False, limit: int | None = None) -> list:
    """Exhaustive grid search for spec tuples with prescribed crossing profile.

    ``self_crossings`` is one count for every curve or a per-curve list;
    ``cross`` is one count for every pair, or a dict ``{(i, j): count}``.
    ``simple`` forces zero self-crossings.  Results are tuples of canonical
    specs in deterministic order; arrangements with triple points are skipped.
    """
    from .atom_check import is_atom

    if surface not in (TORUS, KLEIN):
        raise ValueError("search covers the torus and the Klein bottle")
    selfs = _as_list(self_crossings, curves, "self_crossings")
    if simple:
        if any(s not in (None, 0) for s in selfs):
            return []
        selfs = [0] * curves
    if isinstance(cross, dict):
        pair_target = {tuple(sorted(k)): v for k, v in cross.items()}
    else:
        pair_target = {pair: cross for pair in combinations(range(curves), 2)}
    if max_coord < 1 or max_den < 1:
        return []

    pool = flat_specs(surface, max_coord, max_den)
    self_cache = {}

    def selfcount(s):
        if s not in self_cache:
            self_cache[s] = self_intersection_count(s, surface)
        return self_cache[s]

    cands = [[s for s in pool if selfs[k] is None or selfcount(s) == selfs[k]]
             for k in range(curves)]
    pair_cache = {}

    def paircount(a, b):
        key = (a, b)
        if key not in pair_cache:
            try:
                pair_cache[key] = intersection_count(a, b, surface)
            except DegenerateInputError:
                pair_cache[key] = None
        return pair_cache[key]

    results = []
    seen = set()
    chosen = []

    def fits(k, s):
        for j, prev in enumerate(chosen):
            if prev == s or (prev > s and _interchangeable(j, k)):
                return False
            want = pair_target.get((j, k))
            got = paircount(prev, s)
            if got is None or (want is not None and got != want):
                return False
        return True

    def _interchangeable(j, k):
        # positions with identical targets are only tried in increasing order
        if selfs[j] != selfs[k]:
            return False
        for m in range(curves):
            if m in (j, k):
                continue
            if pair_target.get(tuple(sorted((j, m)))) != pair_target.get(tuple(sorted((k, m)))):
                return False
        return True

    def rec(k):
        if limit is not None and len(results) >= limit:
            return
        if k == curves:
            key = frozenset(chosen)
            if key in seen:
                return
            try:
                g, c, _ = flat_arrangement(surface, chosen)
            except DegenerateInputError:
                return
            if atoms_only and not is_atom(g, c).is_atom:
                return
            seen.add(key)
            results.append(tuple(chosen))
            return
        for s in cands[k]:
            if fits(k, s):
                chosen.append(s)
                rec(k + 1)
                chosen.pop()
                if limit is not None and len(results) >= limit:
                    return

    rec(0)
    return results
