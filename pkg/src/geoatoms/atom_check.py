"""Admissibility, atom recognition and the parity criteria for curve systems.

A curve system splits the edges of a 4-regular embedded graph into closed
curves by going straight through every vertex.  On top of it we decide
whether the cells can be colored black and white so that every edge separates
two colors, and check the orientation/crossing parity rules that closed
geodesics on the model surfaces must obey.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import NotAdmissibleError, WalkBudgetExceeded, WrongSurfaceError
from .surface_map import (
    EmbeddedGraph,
    SurfaceInvariants,
    SurfaceKind,
    classify_surface,
    components,
    trace_faces,
)

STRAIGHT = "straight"
LEFT = "turn_left"
RIGHT = "turn_right"

WHITE, BLACK = 0, 1


# --- curve systems ---------------------------------------------------------

@dataclass(frozen=True)
class CurveSystem:
    """Closed curves of an admissible pair.

    ``through[d]`` is the dart continuing straight after arriving at the
    vertex of ``d`` along ``d``'s edge.  ``curves[k]`` is the cyclic sequence of
    darts traversed by curve ``k``; an empty tuple stands for a curve that meets
    no vertex at all.  ``reversing[k]`` tells whether going once around curve
    ``k`` flips the local orientation.
    """

    graph: EmbeddedGraph
    through: tuple
    curves: tuple
    reversing: tuple

    @property
    def num_curves(self) -> int:
        return len(self.curves)

    def passages(self, k: int) -> list:
        return [self.graph.vertex_of(d) for d in self.curves[k]]

    def self_crossings(self, k: int) -> int:
        return sum(1 for n in Counter(self.passages(k)).values() if n == 2)

    def cross_count(self, k: int, j: int) -> int:
        if k == j:
            raise ValueError("use self_crossings for a single curve")
        return len(set(self.passages(k)) & set(self.passages(j)))

    def crossings_with_others(self, k: int) -> int:
        return sum(self.cross_count(k, j) for j in range(self.num_curves) if j != k)

    def curve_of_dart(self) -> dict:
        out = {}
        for k, curve in enumerate(self.curves):
            for d in curve:
                out[d] = out[d ^ 1] = k
        return out

    def stats(self) -> list:
        rows = []
        for k in range(self.num_curves):
            rows.append({
                "curve": k,
                "self_crossings": self.self_crossings(k),
                "cross_counts": [self.cross_count(k, j) if j != k else 0
                                 for j in range(self.num_curves)],
                "reverses_orientation": bool(self.reversing[k]),
            })
        return rows


def straight_pairing(g: EmbeddedGraph) -> tuple:
    """Pair each dart with the opposite dart of its (degree 4) vertex."""
    through = [None] * g.num_darts
    for rot in g.rotations:
        if len(rot) == 4:
            for i, d in enumerate(rot):
                through[d] = rot[(i + 2) % 4]
    return tuple(through)


def trace_curves(g: EmbeddedGraph, through: Sequence[int]) -> list:
    seen = set()
    curves = []
    for d0 in range(g.num_darts):
        if d0 in seen or (d0 ^ 1) in seen:
            continue
        curve = []
        d = d0
        while True:
            curve.append(d)
            seen.add(d)
            nxt = through[d ^ 1]
            if nxt is None or nxt == d0:
                break
            if nxt in seen:
                break
            d = nxt
        curves.append(tuple(curve))
    return curves


def curve_system(g: EmbeddedGraph, through: Sequence[int] | None = None) -> CurveSystem:
    through = tuple(through) if through is not None else straight_pairing(g)
    curves = trace_curves(g, through)
    reversing = tuple(_sign_product(g, c) < 0 for c in curves)
    return CurveSystem(g, through, tuple(curves), reversing)


def _sign_product(g: EmbeddedGraph, darts) -> int:
    p = 1
    for d in darts:
        p *= g.sign(d)
    return p


# --- admissibility ---------------------------------------------------------

def validate_admissible(g: EmbeddedGraph, c: CurveSystem) -> str | None:
    """Return None for an admissible pair, else one of ``no_intersections``,
    ``bad_degree``, ``bad_pairing``, ``disconnected``."""
    if g.num_vertices == 0:
        return "no_intersections"
    if any(len(rot) != 4 for rot in g.rotations):
        return "bad_degree"
    through = c.through
    for rot in g.rotations:
        for i, d in enumerate(rot):
            # transversal crossing: each branch continues to the opposite dart
            if through[d] != rot[(i + 2) % 4]:
                return "bad_pairing"
    if any(len(curve) == 0 for curve in c.curves):
        return "disconnected"
    if len(components(g)) != 1:
        return "disconnected"
    return None


def require_admissible(g: EmbeddedGraph, c: CurveSystem) -> None:
    reason = validate_admissible(g, c)
    if reason is not None:
        raise NotAdmissibleError(reason)


# --- two-coloring ----------------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    colors: tuple

    def check(self, g: EmbeddedGraph) -> bool:
        return all(self.colors[a] != self.colors[b]
                   for a, b in (g.faces_across(e) for e in range(g.num_edges)))


@dataclass(frozen=True)
class OddWitness:
    """Closed chain of faces ``faces[0], ..., faces[-1] == faces[0]`` where
    consecutive faces meet across ``edges[i]``; its length is odd."""

    faces: tuple
    edges: tuple

    def __len__(self):
        return len(self.edges)

    def replay(self, g: EmbeddedGraph) -> bool:
        if len(self.faces) != len(self.edges) + 1 or self.faces[0] != self.faces[-1]:
            return False
        for i, e in enumerate(self.edges):
            if set(g.faces_across(e)) != {self.faces[i], self.faces[i + 1]}:
                return False
        return len(self.edges) % 2 == 1


def _face_adjacency(g: EmbeddedGraph):
    adj = [[] for _ in range(len(trace_faces(g)))]
    for e in range(g.num_edges):
        a, b = g.faces_across(e)
        adj[a].append((b, e))
        if a != b:
            adj[b].append((a, e))
    return adj


def _shortest_odd_cycle(adj) -> OddWitness:
    best = None
    for root in range(len(adj)):
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for h, e in adj[f]:
                if h not in dist:
                    dist[h] = dist[f] + 1
                    parent[h] = (f, e)
                    queue.append(h)
        for f in range(len(adj)):
            if f not in dist:
                continue
            for h, e in adj[f]:
                if dist[f] != dist[h] or h < f:
                    continue
                length = 2 * dist[f] + 1
                if best is not None and length >= best[0]:
                    continue
                best = (length, _splice(parent, f, h, e))
    return best[1]


def _splice(parent, a, b, e) -> OddWitness:
    def path(x):
        faces, edges = [x], []
        while parent[x] is not None:
            x, edge = parent[x]
            faces.append(x)
            edges.append(edge)
        return faces, edges  # from x up to root

    fa, ea = path(a)
    fb, eb = path(b)
    # drop the common tail (shared ancestors) to get a simple closed chain
    while len(fa) > 1 and len(fb) > 1 and fa[-2] == fb[-2] and ea[-1] == eb[-1]:
        fa.pop()
        fb.pop()
        ea.pop()
        eb.pop()
    faces = list(reversed(fa)) + fb
    edges = list(reversed(ea)) + [e] + eb
    return OddWitness(tuple(faces), tuple(edges))


def two_color(g: EmbeddedGraph) -> Coloring | OddWitness:
    """Color the faces alternately across every edge, starting from the face
    that contains the lowest dart (white).  Returns an odd closed chain of
    faces when no proper coloring exists."""
    adj = _face_adjacency(g)
    color = [None] * len(adj)
    for root in range(len(adj)):
        if color[root] is not None:
            continue
        color[root] = WHITE
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for h, _ in adj[f]:
                if color[h] is None:
                    color[h] = 1 - color[f]
                    queue.append(h)
                elif color[h] == color[f]:
                    return _shortest_odd_cycle(adj)
    return Coloring(tuple(color))


def brute_force_colorable(g: EmbeddedGraph) -> list:
    """All proper colorings, by enumeration of the 2^F assignments."""
    nfaces = len(trace_faces(g))
    pairs = [g.faces_across(e) for e in range(g.num_edges)]
    return [cols for cols in product((WHITE, BLACK), repeat=nfaces)
            if all(cols[a] != cols[b] for a, b in pairs)]


# --- verdict ---------------------------------------------------------------

@dataclass(frozen=True)
class AtomVerdict:
    status: str
    reason: str | None = None
    coloring: Coloring | None = None
    witness: OddWitness | None = None
    invariants: SurfaceInvariants | None = None

    @property
    def is_atom(self) -> bool:
        return self.status == "atom"

    def describe(self) -> str:
        inv = self.invariants
        if self.status == "atom":
            return f"atom, V={inv.v}"
        if self.status == "not_admissible":
            return f"not admissible ({self.reason})"
        if self.status == "not_cellular":
            return (f"not cellular on {inv.claimed.label} "
                    f"(traced chi={inv.chi}, orientable={inv.orientable})")
        return (f"not two-colorable (odd face chain of length {len(self.witness)}: "
                f"faces {list(self.witness.faces)})")


def is_atom(g: EmbeddedGraph, c: CurveSystem | None = None) -> AtomVerdict:
    c = c if c is not None else curve_system(g)
    reason = validate_admissible(g, c)
    if reason is not None:
        return AtomVerdict("not_admissible", reason=reason)
    inv = classify_surface(g)
    if g.surface is not None and not inv.cellular_on_claimed:
        return AtomVerdict("not_cellular", invariants=inv)
    result = two_color(g)
    if isinstance(result, OddWitness):
        return AtomVerdict("not_two_colorable", witness=result, invariants=inv)
    return AtomVerdict("atom", coloring=result, invariants=inv)


# --- closed walks ----------------------------------------------------------

@dataclass(frozen=True)
class ClosedWalk:
    """Closed walk along edges of the graph.

    ``moves[i]`` is what happens at the start vertex of ``darts[i]``: the walk
    arrives there along ``darts[i - 1]`` and leaves through ``darts[i]``.
    """

    darts: tuple
    moves: tuple

    @property
    def u(self) -> int:
        return sum(1 for m in self.moves if m == STRAIGHT)

    def vertices(self, g: EmbeddedGraph) -> list:
        return [g.vertex_of(d) for d in self.darts]

    def is_simple(self, g: EmbeddedGraph) -> bool:
        vs = self.vertices(g)
        return len(set(vs)) == len(vs)


def closed_walk(g: EmbeddedGraph, through: Sequence[int], darts: Sequence[int]) -> ClosedWalk:
    darts = tuple(darts)
    if not darts:
        raise ValueError("empty walk")
    k = len(darts)
    for i in range(k):
        prev, cur = darts[i - 1], darts[i]
        if g.vertex_of(prev ^ 1) != g.vertex_of(cur):
            raise ValueError(f"walk is not closed/consecutive at step {i}")
        if cur == prev ^ 1:
            raise ValueError(f"walk backtracks at step {i}")
    # side bit transported from the start of darts[0]
    sides = [1] * k
    s = 1
    for i in range(1, k):
        s *= g.sign(darts[i - 1])
        sides[i] = s
    sides[0] = s * g.sign(darts[-1])
    moves = []
    for i in range(k):
        arrival = darts[i - 1] ^ 1
        cur = darts[i]
        if through[arrival] == cur:
            moves.append(STRAIGHT)
        elif g.rotate(arrival, sides[i]) == cur:
            moves.append(RIGHT)
        else:
            moves.append(LEFT)
    return ClosedWalk(darts, tuple(moves))


def orientation_change(w: ClosedWalk, g: EmbeddedGraph) -> int:
    """1 when transporting a frame once around ``w`` reverses it, else 0."""
    return 1 if _sign_product(g, w.darts) < 0 else 0


def u_count(w: ClosedWalk) -> int:
    return w.u


def curve_walk(c: CurveSystem, k: int) -> ClosedWalk:
    return closed_walk(c.graph, c.through, c.curves[k])


def face_walk(g: EmbeddedGraph, c: CurveSystem, face: int) -> ClosedWalk:
    return closed_walk(g, c.through, trace_faces(g)[face].darts)


def simple_closed_walks(g: EmbeddedGraph, c: CurveSystem, budget: int = 10**6):
    """Yield every closed walk visiting no vertex twice, in lexicographic order
    of dart sequences.  A walk is listed once per direction, starting at its
    lowest vertex."""
    count = 0
    for d0 in range(g.num_darts):
        v0 = g.vertex_of(d0)
        stack = [(d0,)]
        while stack:
            path = stack.pop()
            last = path[-1]
            arrival = last ^ 1
            w = g.vertex_of(arrival)
            if w == v0:
                if d0 != arrival:
                    count += 1
                    if count > budget:
                        raise WalkBudgetExceeded(f"more than {budget} simple closed walks")
                    yield closed_walk(g, c.through, path)
                continue
            if w < v0 or any(g.vertex_of(d) == w for d in path):
                continue
            nxt = [x for x in g.rotations[w] if x != arrival]
            for x in sorted(nxt, reverse=True):
                stack.append(path + (x,))


def statement1_violation(w: ClosedWalk, g: EmbeddedGraph) -> bool:
    return orientation_change(w, g) != w.u % 2


def statement1_check(g: EmbeddedGraph, c: CurveSystem | None = None,
                     budget: int = 10**6) -> ClosedWalk | None:
    """First simple closed walk whose orientation change disagrees with the
    parity of its straight passages, or None when every walk agrees."""
    c = c if c is not None else curve_system(g)
    require_admissible(g, c)
    for w in simple_closed_walks(g, c, budget):
        if statement1_violation(w, g):
            return w
    return None


# --- parity criteria on curves --------------------------------------------

def prop1_check(c: CurveSystem) -> int | None:
    """Index of the first curve whose orientation reversal disagrees with the
    parity of its crossings with the other curves, or None."""
    for k in range(c.num_curves):
        if bool(c.reversing[k]) != (c.crossings_with_others(k) % 2 == 1):
            return k
    return None


def _require_surface(g: EmbeddedGraph, kind: SurfaceKind):
    if g.surface is not kind:
        raise WrongSurfaceError(f"criterion applies to {kind.label}, got "
                                f"{g.surface.label if g.surface else 'no surface'}")


def torus_parity_check(c: CurveSystem) -> int | None:
    _require_surface(c.graph, SurfaceKind.TORUS)
    if c.num_curves < 2:
        raise ValueError("needs at least two closed geodesics")
    for k in range(c.num_curves):
        n = c.crossings_with_others(k)
        if n == 0 or n % 2:
            return k
    return None


def klein_loop_cell_check(g: EmbeddedGraph) -> int | None:
    """Index of a face bounded by a single loop edge, or None."""
    _require_surface(g, SurfaceKind.KLEIN_BOTTLE)
    for i, face in enumerate(trace_faces(g)):
        if face.degree == 1 and g.is_loop(face.darts[0] >> 1):
            return i
    return None


def split_loops(c: CurveSystem, k: int, vertex: int) -> tuple:
    """Split curve ``k`` at a self-crossing ``vertex`` into two loops, each a
    dart sequence starting at ``vertex``."""
    curve = c.curves[k]
    idx = [i for i, d in enumerate(curve) if c.graph.vertex_of(d) == vertex]
    if len(idx) != 2:
        raise ValueError(f"vertex {vertex} is not a self-crossing of curve {k}")
    i, j = idx
    return curve[i:j], curve[j:] + curve[:i]


def loop_crossings(c: CurveSystem, k: int, vertex: int) -> tuple:
    """For each loop at ``vertex``: crossings with other curves plus crossings
    with the complementary loop (the splitting point excluded)."""
    g = c.graph
    curve_of = c.curve_of_dart()
    loops = split_loops(c, k, vertex)
    counts = []
    for a, loop in enumerate(loops):
        other = set(g.vertex_of(d) for d in loops[1 - a])
        inner = Counter(g.vertex_of(d) for d in loop[1:])
        n = 0
        for w, mult in inner.items():
            if mult == 2:
                continue  # self-crossing of this loop
            if w in other:
                n += 1
            else:
                n += 1 if any(curve_of[d] != k for d in g.rotations[w]) else 0
        counts.append(n)
    return tuple(counts)


def klein_split_check(c: CurveSystem, k: int, vertex: int) -> tuple | None:
    """None when both loops at ``vertex`` carry an odd count, else the pair
    of counts."""
    _require_surface(c.graph, SurfaceKind.KLEIN_BOTTLE)
    counts = loop_crossings(c, k, vertex)
    return None if all(n % 2 == 1 for n in counts) else counts


def klein_segment_orientation(c: CurveSystem, k: int, vertex: int) -> tuple:
    """Orientation-change parity of each loop at the self-crossing."""
    _require_surface(c.graph, SurfaceKind.KLEIN_BOTTLE)
    return tuple(1 if _sign_product(c.graph, loop) < 0 else 0
                 for loop in split_loops(c, k, vertex))


def klein_odd_selfint_reject(c: CurveSystem) -> bool:
    """True when the system is one closed curve with an odd number of
    self-crossings, which no geodesic atom on the Klein bottle can be."""
    _require_surface(c.graph, SurfaceKind.KLEIN_BOTTLE)
    return c.num_curves == 1 and c.self_crossings(0) % 2 == 1


def self_crossing_vertices(c: CurveSystem, k: int) -> list:
    return sorted(v for v, n in Counter(c.passages(k)).items() if n == 2)
