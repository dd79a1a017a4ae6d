"""The cube of resolutions of a link diagram.

A vertex ``alpha`` of ``{0,1}^n`` is encoded as an int whose bit ``j``
is the smoothing of crossing ``j``.  Circles of a resolution are found
by union-find over arcs and indexed by their smallest arc.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .diagram import LinkDiagram

__all__ = [
    "DEFAULT_MAX_CROSSINGS",
    "CubeSizeError",
    "EdgeError",
    "VertexResolution",
    "EdgeSurgery",
    "Cube",
    "resolve",
    "edge",
    "full_cube",
    "alpha_str",
]

DEFAULT_MAX_CROSSINGS = 16


class CubeSizeError(RuntimeError):
    """Raised when a diagram has more crossings than the configured limit."""

    def __init__(self, n: int, limit: int):
        super().__init__(
            f"diagram has {n} crossings, over the limit of {limit} "
            f"(2^{n} resolutions); raise it with --max-crossings"
        )
        self.n = n
        self.limit = limit


class EdgeError(ValueError):
    """An edge request that does not describe a cube edge."""


def alpha_str(alpha: int, n: int) -> str:
    """Bit string of a vertex, crossing 0 first."""
    return "".join("1" if alpha >> j & 1 else "0" for j in range(n))


@dataclass(frozen=True)
class VertexResolution:
    alpha: int
    circles: tuple[tuple[int, ...], ...]
    basepoint_circle: int
    circle_of: dict  # arc -> circle index

    @property
    def k(self) -> int:
        return len(self.circles)


@dataclass(frozen=True)
class EdgeSurgery:
    """Surgery along crossing ``crossing`` from ``from_vertex`` to ``to_vertex``.

    For a merge ``sources`` has two circles and ``targets`` one; for a
    split it is the other way round.  ``carry`` lists ``(src, dst)`` pairs
    for the circles the surgery does not touch.
    """

    from_vertex: int
    to_vertex: int
    crossing: int
    kind: str  # "merge" | "split"
    sources: tuple[int, ...]
    targets: tuple[int, ...]
    carry: tuple[tuple[int, int], ...]

    @property
    def is_merge(self) -> bool:
        return self.kind == "merge"


def resolve(diagram: LinkDiagram, alpha: int) -> VertexResolution:
    """Circles of the full resolution ``D_alpha``."""
    if alpha < 0 or alpha >> diagram.n:
        raise EdgeError(f"vertex {alpha} is not in the {diagram.n}-cube")
    parent = {x: x for x in diagram.crossing_arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j, (a, b, c, d) in enumerate(diagram.crossings):
        if alpha >> j & 1:
            pairs = ((a, d), (b, c))
        else:
            pairs = ((a, b), (c, d))
        for u, v in pairs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)

    groups: dict[int, list[int]] = {}
    for x in diagram.crossing_arcs:
        groups.setdefault(find(x), []).append(x)
    circles = sorted(tuple(g) for g in groups.values())
    circles.extend((x,) for x in diagram.loop_arcs)
    circle_of = {x: i for i, c in enumerate(circles) for x in c}
    return VertexResolution(
        alpha, tuple(circles), circle_of[diagram.basepoint_arc], circle_of
    )


def _surgery(diagram, res_a, res_b, j) -> EdgeSurgery:
    a, b, c, d = diagram.crossings[j]
    ca, cc = res_a.circle_of[a], res_a.circle_of[c]
    touched_src = {ca, cc}
    da, db = res_b.circle_of[a], res_b.circle_of[b]
    touched_dst = {da, db}
    if ca != cc and da == db:
        kind = "merge"
    elif ca == cc and da != db:
        kind = "split"
    else:
        raise EdgeError(
            f"surgery at crossing {j} from {alpha_str(res_a.alpha, diagram.n)} "
            f"changes {res_a.k} circles into {res_b.k}; the PD code is not planar"
        )
    carry = tuple(
        (i, res_b.circle_of[circ[0]])
        for i, circ in enumerate(res_a.circles)
        if i not in touched_src
    )
    return EdgeSurgery(
        res_a.alpha,
        res_b.alpha,
        j,
        kind,
        tuple(sorted(touched_src)),
        tuple(sorted(touched_dst)),
        carry,
    )


def edge(diagram: LinkDiagram, alpha: int, j: int) -> EdgeSurgery:
    """Classify the cube edge leaving ``alpha`` along crossing ``j``."""
    if not 0 <= j < diagram.n:
        raise EdgeError(f"no crossing {j}")
    if alpha >> j & 1:
        raise EdgeError(f"bit {j} of {alpha_str(alpha, diagram.n)} is already 1")
    return _surgery(diagram, resolve(diagram, alpha), resolve(diagram, alpha | 1 << j), j)


class Cube:
    """Fully materialized cube: all vertices and all edges.

    Vertices are indexed by ``alpha``; edges by ``(alpha, j)``.
    """

    def __init__(self, diagram: LinkDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS):
        if diagram.n > max_crossings:
            raise CubeSizeError(diagram.n, max_crossings)
        self.diagram = diagram
        self.n = diagram.n
        self.vertices = [resolve(diagram, a) for a in range(1 << self.n)]
        self.edges: dict[tuple[int, int], EdgeSurgery] = {}
        for alpha, res in enumerate(self.vertices):
            for j in range(self.n):
                if not alpha >> j & 1:
                    self.edges[alpha, j] = _surgery(
                        diagram, res, self.vertices[alpha | 1 << j], j
                    )

    def __getitem__(self, alpha: int) -> VertexResolution:
        return self.vertices[alpha]

    def out_edges(self, alpha: int) -> Iterator[EdgeSurgery]:
        for j in range(self.n):
            if not alpha >> j & 1:
                yield self.edges[alpha, j]

    @property
    def max_circles(self) -> int:
        return max(v.k for v in self.vertices)

    def dump(self) -> str:
        """Debug dump: ``alpha k basepoint_circle`` then ``alpha j kind``."""
        lines = [
            f"{alpha_str(v.alpha, self.n)} {v.k} {v.basepoint_circle}"
            for v in self.vertices
        ]
        lines += [
            f"{alpha_str(a, self.n)} {j} {e.kind}"
            for (a, j), e in sorted(self.edges.items())
        ]
        return "\n".join(lines) + "\n"


def full_cube(diagram: LinkDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> Cube:
    return Cube(diagram, max_crossings)
