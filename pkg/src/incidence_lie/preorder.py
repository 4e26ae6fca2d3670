"""Finite pre-ordered sets and the combinatorics built on their comparability graph.

Vertices are the integers ``0..N-1``.  ``x ~ y`` means comparable, ``x < y``
means ``x <= y`` and ``x != y`` (so ``x < y`` and ``y < x`` can both hold when
``x`` and ``y`` are equivalent), and ``x ≃ y`` means ``x <= y <= x``.

Strict edges ``(x, y)`` with ``x < y`` are grouped into cycle classes: two
edges are in one class when some cycle of the comparability graph passes
through both, where an equivalent pair counts as a 2-cycle on its own.  The
classes are computed from the block (biconnected component) decomposition.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx

__all__ = [
    "Preorder",
    "PreorderError",
    "EdgeClassification",
    "ClassMembershipError",
    "connected_components",
    "edge_classes",
    "is_full_component",
    "v_set",
    "vx_partition",
    "random_preorder",
]

Edge = tuple[int, int]


class PreorderError(ValueError):
    pass


class ClassMembershipError(ValueError):
    """A vertex does not touch the requested edge class."""


@dataclass(frozen=True)
class Preorder:
    size: int
    leq: tuple[tuple[bool, ...], ...] = field(repr=False)

    def __post_init__(self):
        n = self.size
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise PreorderError("relation matrix must be N x N")
        for x in range(n):
            if not self.leq[x][x]:
                raise PreorderError(f"not reflexive at {x}")
        for x in range(n):
            rx = self.leq[x]
            for y in range(n):
                if rx[y]:
                    ry = self.leq[y]
                    for z in range(n):
                        if ry[z] and not rx[z]:
                            raise PreorderError(
                                f"not transitive: {x}<={y}<={z} but not {x}<={z}"
                            )

    # -- construction ------------------------------------------------------

    @classmethod
    def from_generators(cls, size: int, pairs: Iterable[Edge]) -> "Preorder":
        """Reflexive-transitive closure of ``pairs`` (Warshall)."""
        m = [[x == y for y in range(size)] for x in range(size)]
        for x, y in pairs:
            _check_vertex(size, x)
            _check_vertex(size, y)
            m[x][y] = True
        for k in range(size):
            mk = m[k]
            for i in range(size):
                if m[i][k]:
                    mi = m[i]
                    for j in range(size):
                        if mk[j]:
                            mi[j] = True
        return cls(size, tuple(tuple(row) for row in m))

    @classmethod
    def from_relation(cls, size: int, pairs: Iterable[Edge]) -> "Preorder":
        """Exactly the given pairs plus the diagonal; raises unless transitive."""
        m = [[x == y for y in range(size)] for x in range(size)]
        for x, y in pairs:
            _check_vertex(size, x)
            _check_vertex(size, y)
            m[x][y] = True
        return cls(size, tuple(tuple(row) for row in m))

    @classmethod
    def chain(cls, size: int) -> "Preorder":
        return cls.from_generators(size, [(i, i + 1) for i in range(size - 1)])

    # -- relations ---------------------------------------------------------

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq[x][y]

    def comparable(self, x: int, y: int) -> bool:
        return self.leq[x][y] or self.leq[y][x]

    def equivalent(self, x: int, y: int) -> bool:
        return self.leq[x][y] and self.leq[y][x]

    @property
    def vertices(self) -> range:
        return range(self.size)

    @cached_property
    def pairs(self) -> tuple[Edge, ...]:
        """All ``(x, y)`` with ``x <= y``, lexicographic."""
        return tuple(
            (x, y) for x in range(self.size) for y in range(self.size) if self.leq[x][y]
        )

    @cached_property
    def strict_edges(self) -> tuple[Edge, ...]:
        return tuple((x, y) for x, y in self.pairs if x != y)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(y for y in range(self.size) if y != x and self.comparable(x, y))
            for x in range(self.size)
        )

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        return connected_components(self)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        k = max(self.component_of, default=-1) + 1
        groups: list[list[int]] = [[] for _ in range(k)]
        for v, c in enumerate(self.component_of):
            groups[c].append(v)
        return tuple(tuple(g) for g in groups)

    @cached_property
    def classification(self) -> "EdgeClassification":
        return edge_classes(self)

    def is_full_component(self, component: int) -> bool:
        return is_full_component(self, component)


def _check_vertex(size: int, v: int) -> None:
    if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < size:
        raise PreorderError(f"vertex {v!r} out of range 0..{size - 1}")


def connected_components(P: Preorder) -> tuple[int, ...]:
    """Component label per vertex, numbered in first-seen order."""
    label = [-1] * P.size
    nxt = 0
    for s in range(P.size):
        if label[s] >= 0:
            continue
        label[s] = nxt
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in P.neighbors[u]:
                if label[w] < 0:
                    label[w] = nxt
                    queue.append(w)
        nxt += 1
    return tuple(label)


def is_full_component(P: Preorder, component: int) -> bool:
    members = P.components[component]
    return all(P.equivalent(x, y) for x in members for y in members)


# ---------------------------------------------------------------------------
# edge classes


@dataclass(frozen=True, eq=False)
class EdgeClassification:
    """Cycle classes of the strict edges and the vertex sets derived from them.

    Class ids are numbered by the order of each class's least edge.
    """

    preorder: Preorder
    classes: tuple[tuple[Edge, ...], ...]
    edge_class: dict[Edge, int] = field(repr=False)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.preorder.strict_edges

    @property
    def component_of(self) -> tuple[int, ...]:
        return self.preorder.component_of

    def class_of(self, x: int, y: int) -> int:
        try:
            return self.edge_class[(x, y)]
        except KeyError:
            raise ClassMembershipError(f"({x}, {y}) is not a strict edge") from None

    @cached_property
    def class_vertices(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(v for e in cls for v in e) for cls in self.classes)

    @cached_property
    def class_component(self) -> tuple[int, ...]:
        return tuple(self.component_of[cls[0][0]] for cls in self.classes)

    @cached_property
    def vertex_classes(self) -> tuple[tuple[int, ...], ...]:
        """The class-id set touching each vertex."""
        out: list[list[int]] = [[] for _ in range(self.preorder.size)]
        for i, vs in enumerate(self.class_vertices):
            for v in vs:
                out[v].append(i)
        return tuple(tuple(sorted(ids)) for ids in out)

    @cached_property
    def component_classes(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.preorder.components]
        for i, c in enumerate(self.class_component):
            out[c].append(i)
        return tuple(tuple(ids) for ids in out)

    def representative(self, i: int) -> Edge:
        return self.classes[i][0]

    def v_set(self, x: int, i: int) -> frozenset[int]:
        return self._v_sets[(x, i)]

    def vx_partition(self, i: int) -> dict[int, frozenset[int]]:
        return self._vx[i]

    @cached_property
    def _v_sets(self) -> dict[tuple[int, int], frozenset[int]]:
        return {
            (x, i): v_set(self, x, i)
            for x in range(self.preorder.size)
            for i in self.vertex_classes[x]
        }

    @cached_property
    def _vx(self) -> tuple[dict[int, frozenset[int]], ...]:
        return tuple(vx_partition(self, i) for i in range(len(self.classes)))


def edge_classes(P: Preorder) -> EdgeClassification:
    """Group the strict edges of ``P`` by the cycle relation.

    Two strict edges are equivalent iff their undirected comparability edges
    lie in one block with at least two edges.  A bridge is its own block: it
    carries one strict edge, or two (``e_xy`` and ``e_yx``) when its endpoints
    are equivalent, which is then a 2-cycle.
    """
    g = nx.Graph()
    g.add_nodes_from(range(P.size))
    g.add_edges_from(P.strict_edges)
    blocks: list[list[Edge]] = []
    for block in nx.biconnected_component_edges(g):
        strict: list[Edge] = []
        for u, v in block:
            if P.le(u, v):
                strict.append((u, v))
            if P.le(v, u):
                strict.append((v, u))
        blocks.append(sorted(strict))
    blocks.sort(key=lambda b: b[0])
    edge_class = {e: i for i, b in enumerate(blocks) for e in b}
    return EdgeClassification(P, tuple(tuple(b) for b in blocks), edge_class)


def v_set(C: EdgeClassification, x: int, i: int) -> frozenset[int]:
    """Vertices joined to ``x`` through class ``i`` without revisiting ``x``.

    ``{x} ∪ V(E_i) ∪`` everything reachable in the comparability graph with
    ``x`` deleted, starting from a neighbour of ``x`` that lies on class ``i``.
    """
    if i not in C.vertex_classes[x]:
        raise ClassMembershipError(f"vertex {x} does not touch class {i}")
    P = C.preorder
    cv = C.class_vertices[i]
    seen = {x}
    queue = deque()
    for w in P.neighbors[x]:
        if w in cv and w not in seen:
            seen.add(w)
            queue.append(w)
    while queue:
        u = queue.popleft()
        for w in P.neighbors[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen | cv)


def vx_partition(C: EdgeClassification, i: int) -> dict[int, frozenset[int]]:
    """Split the host component of class ``i`` into the pieces ``V_x``.

    ``V_x`` is ``x`` plus whatever ``x`` reaches while walking only through
    vertices outside the class's vertex set.
    """
    P = C.preorder
    cv = C.class_vertices[i]
    out: dict[int, frozenset[int]] = {}
    for x in sorted(cv):
        seen = {x}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in P.neighbors[u]:
                if w not in cv and w not in seen:
                    seen.add(w)
                    queue.append(w)
        out[x] = frozenset(seen)
    return out


def random_preorder(
    size: int, rng: random.Random, density: float = 0.3, backward: float = 0.05
) -> Preorder:
    """Closure of random generating pairs.

    Pairs ``x -> y`` with ``x < y`` (as integers) are drawn with probability
    ``density`` and reversed ones with ``backward``; the latter create
    equivalent vertices.
    """
    pairs = [
        (x, y)
        for x in range(size)
        for y in range(size)
        if x != y and rng.random() < (density if x < y else backward)
    ]
    return Preorder.from_generators(size, pairs)
