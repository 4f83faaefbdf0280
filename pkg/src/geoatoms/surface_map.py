"""Graphs embedded in closed surfaces, encoded as signed rotation systems.

Darts ``2e`` and ``2e + 1`` are the two half-edges of edge ``e``, so the twin
involution is ``d ^ 1``.  Each vertex carries the cyclic (counterclockwise)
order of its darts in a chosen local orientation, and each edge carries a sign:
``-1`` when walking along the edge reverses the transported local orientation.

Faces are traced on *flags* ``(dart, side)``.  Leaving a vertex through ``d``
with side bit ``s``, the walk arrives at ``twin(d)`` with side
``s * sign(edge)`` and leaves through the rotation successor of ``twin(d)``
when that side is ``+1``, through the predecessor when it is ``-1``.  Every
face is traced twice (once per direction); we keep the orbit containing the
lowest flag.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ConnectivityError, StructureError

Flag = tuple  # (dart, side)


class SurfaceKind(enum.Enum):
    SPHERE = ("sphere", 2, True)
    PROJECTIVE_PLANE = ("rp2", 1, False)
    TORUS = ("torus", 0, True)
    KLEIN_BOTTLE = ("klein", 0, False)

    def __init__(self, label, euler_characteristic, orientable):
        self.label = label
        self.euler_characteristic = euler_characteristic
        self.orientable = orientable

    @classmethod
    def from_label(cls, label: str) -> "SurfaceKind":
        for kind in cls:
            if kind.label == label:
                return kind
        raise ValueError(f"unknown surface {label!r}")

    @classmethod
    def from_invariants(cls, chi: int, orientable: bool):
        for kind in cls:
            if kind.euler_characteristic == chi and kind.orientable == orientable:
                return kind
        return None


def twin(d: int) -> int:
    return d ^ 1


def edge_of(d: int) -> int:
    return d >> 1


@dataclass(frozen=True)
class EmbeddedGraph:
    """Signed rotation system.

    ``rotations[v]`` lists the darts leaving vertex ``v`` counterclockwise;
    ``edge_sign[e]`` is ``+1`` or ``-1``.
    """

    rotations: tuple
    edge_sign: tuple
    surface: SurfaceKind | None = None

    def __post_init__(self):
        rotations = tuple(tuple(int(d) for d in rot) for rot in self.rotations)
        signs = tuple(int(s) for s in self.edge_sign)
        object.__setattr__(self, "rotations", rotations)
        object.__setattr__(self, "edge_sign", signs)
        ndarts = 2 * len(signs)
        seen = sorted(d for rot in rotations for d in rot)
        if seen != list(range(ndarts)):
            raise StructureError(
                f"darts must be 0..{ndarts - 1}, each in exactly one rotation once")
        if any(s not in (1, -1) for s in signs):
            raise StructureError("edge signs must be +1 or -1")
        if any(len(rot) == 0 for rot in rotations):
            raise StructureError("isolated vertex")

    @property
    def num_vertices(self) -> int:
        return len(self.rotations)

    @property
    def num_edges(self) -> int:
        return len(self.edge_sign)

    @property
    def num_darts(self) -> int:
        return 2 * len(self.edge_sign)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    @cached_property
    def _position(self):
        vertex = [0] * self.num_darts
        index = [0] * self.num_darts
        for v, rot in enumerate(self.rotations):
            for i, d in enumerate(rot):
                vertex[d] = v
                index[d] = i
        return vertex, index

    def vertex_of(self, d: int) -> int:
        return self._position[0][d]

    def index_of(self, d: int) -> int:
        return self._position[1][d]

    def sign(self, d: int) -> int:
        return self.edge_sign[d >> 1]

    def rotate(self, d: int, step: int) -> int:
        """Dart ``step`` places after ``d`` in the rotation at its vertex."""
        rot = self.rotations[self.vertex_of(d)]
        return rot[(self.index_of(d) + step) % len(rot)]

    def opposite(self, d: int) -> int:
        return self.rotate(d, 2)

    def is_loop(self, e: int) -> bool:
        return self.vertex_of(2 * e) == self.vertex_of(2 * e + 1)

    def face_step(self, flag: Flag) -> Flag:
        d, s = flag
        t = d ^ 1
        s = s * self.edge_sign[d >> 1]
        return self.rotate(t, s), s

    def reverse_flag(self, flag: Flag) -> Flag:
        d, s = flag
        return d ^ 1, -s * self.edge_sign[d >> 1]

    @cached_property
    def _faces(self):
        face_of = {}
        faces = []
        for d in range(self.num_darts):
            for s in (1, -1):
                if (d, s) in face_of:
                    continue
                orbit = [(d, s)]
                nxt = self.face_step((d, s))
                while nxt != (d, s):
                    orbit.append(nxt)
                    nxt = self.face_step(nxt)
                k = len(faces)
                for f in orbit:
                    face_of[f] = k
                    face_of[self.reverse_flag(f)] = k
                faces.append(FaceWalk(tuple(orbit)))
        return faces, face_of

    def face_of_flag(self, flag: Flag) -> int:
        return self._faces[1][flag]

    def faces_across(self, e: int) -> tuple:
        """The faces on the two sides of edge ``e``."""
        face_of = self._faces[1]
        return face_of[(2 * e, 1)], face_of[(2 * e, -1)]

    def is_connected(self) -> bool:
        return len(components(self)) <= 1


@dataclass(frozen=True)
class FaceWalk:
    flags: tuple

    @property
    def darts(self) -> tuple:
        return tuple(d for d, _ in self.flags)

    @property
    def degree(self) -> int:
        return len(self.flags)


@dataclass(frozen=True)
class SurfaceInvariants:
    v: int
    e: int
    f: int
    chi: int
    orientable: bool
    face_degrees: tuple
    claimed: SurfaceKind | None = None

    @property
    def surface(self) -> SurfaceKind | None:
        return SurfaceKind.from_invariants(self.chi, self.orientable)

    @property
    def cellular_on_claimed(self) -> bool:
        return (self.claimed is not None
                and self.chi == self.claimed.euler_characteristic
                and self.orientable == self.claimed.orientable)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    code: tuple = field(compare=True)


def components(g: EmbeddedGraph) -> list:
    seen = [False] * g.num_vertices
    comps = []
    for start in range(g.num_vertices):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for d in g.rotations[v]:
                w = g.vertex_of(d ^ 1)
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def trace_faces(g: EmbeddedGraph) -> list:
    return list(g._faces[0])


def euler_characteristic(g: EmbeddedGraph) -> int:
    return g.num_vertices - g.num_edges + len(g._faces[0])


def vertex_gauge(g: EmbeddedGraph):
    """Per-vertex flips making every spanning-tree edge positive.

    Returns ``(flips, bad_edge)``; ``bad_edge`` is an edge whose sign stays
    negative after the flips, or None when the signature is balanced.
    """
    if not g.is_connected():
        raise ConnectivityError("graph is disconnected")
    flips = [0] * g.num_vertices
    if g.num_vertices == 0:
        return flips, None
    flips[0] = 1
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for d in g.rotations[v]:
            w = g.vertex_of(d ^ 1)
            if flips[w] == 0:
                flips[w] = flips[v] * g.sign(d)
                queue.append(w)
    for e, s in enumerate(g.edge_sign):
        if s * flips[g.vertex_of(2 * e)] * flips[g.vertex_of(2 * e + 1)] < 0:
            return flips, e
    return flips, None


def orientability(g: EmbeddedGraph) -> bool:
    return vertex_gauge(g)[1] is None


def classify_surface(g: EmbeddedGraph) -> SurfaceInvariants:
    faces = trace_faces(g)
    return SurfaceInvariants(
        v=g.num_vertices,
        e=g.num_edges,
        f=len(faces),
        chi=g.num_vertices - g.num_edges + len(faces),
        orientable=orientability(g),
        face_degrees=tuple(sorted(f.degree for f in faces)),
        claimed=g.surface,
    )


# --- transformations -------------------------------------------------------

def flip_vertex(g: EmbeddedGraph, v: int) -> EmbeddedGraph:
    """Reverse the local orientation at ``v``; the embedding is unchanged."""
    rotations = list(g.rotations)
    rotations[v] = (rotations[v][0],) + tuple(reversed(rotations[v][1:]))
    signs = list(g.edge_sign)
    for e in range(g.num_edges):
        ends = (g.vertex_of(2 * e), g.vertex_of(2 * e + 1))
        if ends.count(v) == 1:
            signs[e] = -signs[e]
    return EmbeddedGraph(tuple(rotations), tuple(signs), g.surface)


def mirror(g: EmbeddedGraph) -> EmbeddedGraph:
    rotations = tuple(tuple(reversed(rot)) for rot in g.rotations)
    return EmbeddedGraph(rotations, g.edge_sign, g.surface)


def relabel(g: EmbeddedGraph, vertex_perm: Sequence[int], edge_perm: Sequence[int],
            swap: Sequence[bool], shifts: Sequence[int]) -> EmbeddedGraph:
    """Rename vertices/edges, swap the two darts of chosen edges, and rotate
    the starting point of each cyclic order."""
    def new_dart(d):
        return 2 * edge_perm[d >> 1] + ((d & 1) ^ int(swap[d >> 1]))

    rotations = [None] * g.num_vertices
    for v, rot in enumerate(g.rotations):
        k = shifts[v] % len(rot)
        rot = rot[k:] + rot[:k]
        rotations[vertex_perm[v]] = tuple(new_dart(d) for d in rot)
    signs = [0] * g.num_edges
    for e, s in enumerate(g.edge_sign):
        signs[edge_perm[e]] = s
    return EmbeddedGraph(tuple(rotations), tuple(signs), g.surface)


def random_relabel(g: EmbeddedGraph, rng: random.Random) -> EmbeddedGraph:
    vp = list(range(g.num_vertices))
    ep = list(range(g.num_edges))
    rng.shuffle(vp)
    rng.shuffle(ep)
    swap = [rng.random() < 0.5 for _ in ep]
    shifts = [rng.randrange(max(1, g.degree(v))) for v in range(g.num_vertices)]
    return relabel(g, vp, ep, swap, shifts)


# --- canonical form --------------------------------------------------------

def _transcript(g: EmbeddedGraph, root: int, direction: int, colors=None) -> tuple:
    label = {g.vertex_of(root): 0}
    start = {g.vertex_of(root): (root, direction)}
    order = [g.vertex_of(root)]
    out = []
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        d0, sv = start[v]
        deg = g.degree(v)
        out.append(deg)
        for k in range(deg):
            x = g.rotate(d0, sv * k)
            t = x ^ 1
            w = g.vertex_of(t)
            if w not in label:
                label[w] = len(order)
                start[w] = (t, sv * g.sign(x))
                order.append(w)
            tw, sw = start[w]
            pos = ((g.index_of(t) - g.index_of(tw)) * sw) % g.degree(w)
            out.extend((label[w], pos, g.sign(x) * sv * sw))
            if colors is not None:
                out.append(colors[g.face_of_flag((x, sv))])
    return tuple(out)


def canonical_code(g: EmbeddedGraph, colors: Sequence[int] | None = None) -> CanonicalCode:
    """Lexicographically least breadth-first transcript over every root dart
    and both orientations at the root.

    Vertex flips need no separate enumeration: the orientation of every vertex
    is transported from the root along the search tree, so the transcript only
    records gauge-invariant sign products.  With ``colors`` (one entry per
    face) the face color on the transported side of each dart is recorded too.
    """
    if g.num_vertices == 0:
        return CanonicalCode(())
    if not g.is_connected():
        raise ConnectivityError("canonical form needs a connected graph")
    best = min(_transcript(g, d, s, colors)
               for d in range(g.num_darts) for s in (1, -1))
    return CanonicalCode(best)


def isomorphic(a: EmbeddedGraph, b: EmbeddedGraph, respect_colors: bool = False,
               colors_a=None, colors_b=None) -> bool:
    """Homeomorphism of pairs.  With ``respect_colors`` the face colorings must
    match as well; a missing ``colors_a`` defaults to the normalized
    two-coloring, a missing ``colors_b`` to either two-coloring of ``b``."""
    if (a.num_vertices, a.num_edges) != (b.num_vertices, b.num_edges):
        return False
    if not respect_colors:
        return canonical_code(a) == canonical_code(b)
    from .atom_check import two_color
    colors_a = colors_a if colors_a is not None else two_color(a).colors
    if colors_b is not None:
        return canonical_code(a, colors_a) == canonical_code(b, colors_b)
    # an unspecified coloring of b may be either of its two proper colorings
    colors_b = two_color(b).colors
    code = canonical_code(a, colors_a)
    return code in (canonical_code(b, colors_b), canonical_code(b, [1 - x for x in colors_b]))


# --- text serialization ----------------------------------------------------

def to_text(g: EmbeddedGraph) -> str:
    lines = []
    if g.surface is not None:
        lines.append(f"surface {g.surface.label}")
    for rot in g.rotations:
        lines.append("vertex " + " ".join(map(str, rot)))
    lines.append("signs " + " ".join("+" if s > 0 else "-" for s in g.edge_sign))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> EmbeddedGraph:
    surface = None
    rotations = []
    signs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "surface":
            surface = SurfaceKind.from_label(rest[0])
        elif head == "vertex":
            rotations.append(tuple(int(x) for x in rest))
        elif head == "signs":
            for tok in rest:
                if tok not in ("+", "-", "+1", "-1"):
                    raise StructureError(f"line {lineno}: bad sign {tok!r}")
                signs.append(1 if tok.startswith("+") else -1)
        else:
            raise StructureError(f"line {lineno}: unknown record {head!r}")
    return EmbeddedGraph(tuple(rotations), tuple(signs), surface)


def from_rotations(rotations: Iterable[Iterable[int]], signs: Iterable[int] | None = None,
                   surface: SurfaceKind | None = None) -> EmbeddedGraph:
    rotations = tuple(tuple(r) for r in rotations)
    ndarts = sum(len(r) for r in rotations)
    signs = tuple(signs) if signs is not None else (1,) * (ndarts // 2)
    return EmbeddedGraph(rotations, signs, surface)
