"""Immutable bipartite graphs, matchings, and the structural queries on them.

Vertices are dense integer indices per side; a `Vertex` pairs the side with
the index. Display names (strings) belong to the file layer, never here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import InputError


class Side(enum.Enum):
    X = "x"
    Y = "y"

    @property
    def opposite(self) -> "Side":
        return Side.Y if self is Side.X else Side.X

    def __repr__(self) -> str:  # keep error messages short
        return f"Side.{self.name}"


class Vertex(NamedTuple):
    side: Side
    index: int

    def __repr__(self) -> str:
        # x[3] / y[0]; brackets make clear these are 0-based indices, not names
        return f"{self.side.value}[{self.index}]"


class BipartiteGraph:
    """A bipartite graph on X = {0..x_count-1}, Y = {0..y_count-1}.

    Adjacency is stored once per side as tuples of strictly increasing index
    tuples; the Y side is the exact transpose of the X side. Instances are
    immutable and hashable.
    """

    __slots__ = ("x_count", "y_count", "x_adj", "y_adj", "edge_count")

    def __init__(self, x_count: int, y_count: int, edges: Iterable[tuple[int, int]]):
        if x_count < 0 or y_count < 0:
            raise InputError(f"side sizes must be nonnegative, got {x_count}, {y_count}")
        x_rows: list[list[int]] = [[] for _ in range(x_count)]
        y_rows: list[list[int]] = [[] for _ in range(y_count)]
        seen = set()
        for edge in edges:
            try:
                xi, yi = edge
            except (TypeError, ValueError):
                raise InputError(f"edge {edge!r} is not an (x, y) index pair") from None
            if not (0 <= xi < x_count):
                raise InputError(f"edge ({xi}, {yi}): X-index {xi} out of range [0, {x_count})")
            if not (0 <= yi < y_count):
                raise InputError(f"edge ({xi}, {yi}): Y-index {yi} out of range [0, {y_count})")
            if (xi, yi) in seen:
                raise InputError(f"duplicate edge ({xi}, {yi})")
            seen.add((xi, yi))
            x_rows[xi].append(yi)
            y_rows[yi].append(xi)
        self.x_count = x_count
        self.y_count = y_count
        self.x_adj = tuple(tuple(sorted(row)) for row in x_rows)
        self.y_adj = tuple(tuple(sorted(row)) for row in y_rows)
        self.edge_count = len(seen)

    # -- basic queries ------------------------------------------------------

    def side_count(self, side: Side) -> int:
        return self.x_count if side is Side.X else self.y_count

    def adjacency(self, side: Side) -> tuple[tuple[int, ...], ...]:
        """Adjacency rows for one side; row v lists opposite-side indices."""
        return self.x_adj if side is Side.X else self.y_adj

    def vertices(self, side: Side) -> Iterator[Vertex]:
        for i in range(self.side_count(side)):
            yield Vertex(side, i)

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (x-index, y-index), ascending."""
        for xi, row in enumerate(self.x_adj):
            for yi in row:
                yield (xi, yi)

    def check_vertex(self, v: Vertex) -> None:
        if not isinstance(v, Vertex) or not isinstance(v.side, Side):
            raise InputError(f"{v!r} is not a vertex")
        if not (0 <= v.index < self.side_count(v.side)):
            raise InputError(
                f"{v!r} out of range: side {v.side.value} has "
                f"{self.side_count(v.side)} vertices"
            )

    def neighborhood(self, v: Vertex) -> tuple[Vertex, ...]:
        """N(v): the opposite-side vertices sharing an edge with v, ascending."""
        self.check_vertex(v)
        opp = v.side.opposite
        return tuple(Vertex(opp, i) for i in self.adjacency(v.side)[v.index])

    def neighborhood_of_set(self, s: Iterable[Vertex]) -> tuple[Vertex, ...]:
        """N(S) = union of N(v) for v in S; members must share one side."""
        members = list(s)
        sides = {v.side for v in members}
        if len(sides) > 1:
            raise InputError("neighborhood_of_set needs all vertices on one side")
        out: set[int] = set()
        for v in members:
            self.check_vertex(v)
            out.update(self.adjacency(v.side)[v.index])
        if not members:
            return ()
        opp = members[0].side.opposite
        return tuple(Vertex(opp, i) for i in sorted(out))

    def degree(self, v: Vertex) -> int:
        self.check_vertex(v)
        return len(self.adjacency(v.side)[v.index])

    # -- structure ----------------------------------------------------------

    def components(self) -> list["Component"]:
        """Maximal connected pieces, each with maps back to original indices.

        Order is deterministic: pieces containing an X-vertex come first,
        sorted by their smallest original X-index; pure-Y pieces (isolated
        Y-vertices) follow, sorted by Y-index.
        """
        seen_x = [False] * self.x_count
        seen_y = [False] * self.y_count
        pieces: list[Component] = []
        for start in range(self.x_count):
            if seen_x[start]:
                continue
            xs, ys = [start], []
            seen_x[start] = True
            frontier = [(0, start)]
            while frontier:
                side_tag, i = frontier.pop()
                if side_tag == 0:
                    for j in self.x_adj[i]:
                        if not seen_y[j]:
                            seen_y[j] = True
                            ys.append(j)
                            frontier.append((1, j))
                else:
                    for j in self.y_adj[i]:
                        if not seen_x[j]:
                            seen_x[j] = True
                            xs.append(j)
                            frontier.append((0, j))
            pieces.append(self._carve(sorted(xs), sorted(ys)))
        for j in range(self.y_count):
            if not seen_y[j]:
                pieces.append(self._carve([], [j]))
        return pieces

    def _carve(self, xs: list[int], ys: list[int]) -> "Component":
        xpos = {orig: k for k, orig in enumerate(xs)}
        ypos = {orig: k for k, orig in enumerate(ys)}
        sub_edges = [
            (xpos[xi], ypos[yi])
            for xi in xs
            for yi in self.x_adj[xi]
        ]
        sub = BipartiteGraph(len(xs), len(ys), sub_edges)
        return Component(graph=sub, x_vertices=tuple(xs), y_vertices=tuple(ys))

    def is_biclique(self) -> bool:
        """True iff every cross-side pair is an edge (vacuously true when empty)."""
        return self.edge_count == self.x_count * self.y_count

    def is_balanced_biclique(self) -> bool:
        """True iff the sides have equal size and every cross pair is an edge."""
        return self.x_count == self.y_count and self.is_biclique()

    def is_connected(self) -> bool:
        if self.x_count + self.y_count == 0:
            return False
        return len(self.components()) == 1

    # -- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.x_count == other.x_count
            and self.y_count == other.y_count
            and self.x_adj == other.x_adj
        )

    def __hash__(self) -> int:
        return hash((self.x_count, self.y_count, self.x_adj))

    def __repr__(self) -> str:
        return (
            f"BipartiteGraph({self.x_count}, {self.y_count}, "
            f"{list(self.edges())!r})"
        )


@dataclass(frozen=True)
class Component:
    """One connected piece, reindexed densely from 0 on both sides.

    x_vertices[k] / y_vertices[k] give the original index of the piece's
    k-th X/Y vertex, so `graph` plus the two tuples recover the embedding.
    """

    graph: BipartiteGraph
    x_vertices: tuple[int, ...]
    y_vertices: tuple[int, ...]


class Matching:
    """A partial matching as mutual partner maps; None marks unmatched.

    partner_of_x[i] is the Y-index matched to X-vertex i (or None), and
    partner_of_y is the mirror. Equality and hashing use the partner maps
    only, so matchings found by different routes compare equal.
    """

    __slots__ = ("partner_of_x", "partner_of_y")

    def __init__(
        self,
        partner_of_x: Sequence[Optional[int]],
        partner_of_y: Sequence[Optional[int]],
    ):
        self.partner_of_x = tuple(partner_of_x)
        self.partner_of_y = tuple(partner_of_y)

    @classmethod
    def empty(cls, graph: BipartiteGraph) -> "Matching":
        return cls((None,) * graph.x_count, (None,) * graph.y_count)

    @classmethod
    def from_pairs(
        cls, graph: BipartiteGraph, pairs: Iterable[tuple[int, int]]
    ) -> "Matching":
        """Build and fully validate a matching from (x-index, y-index) pairs."""
        px: list[Optional[int]] = [None] * graph.x_count
        py: list[Optional[int]] = [None] * graph.y_count
        for xi, yi in pairs:
            if not (0 <= xi < graph.x_count) or not (0 <= yi < graph.y_count):
                raise InputError(f"pair ({xi}, {yi}) out of range")
            if yi not in graph.x_adj[xi]:
                raise InputError(f"pair ({xi}, {yi}) is not an edge of the graph")
            if px[xi] is not None:
                raise InputError(f"x[{xi}] appears in two pairs")
            if py[yi] is not None:
                raise InputError(f"y[{yi}] appears in two pairs")
            px[xi] = yi
            py[yi] = xi
        return cls(px, py)

    def partner(self, v: Vertex) -> Optional[Vertex]:
        if v.side is Side.X:
            j = self.partner_of_x[v.index]
            return None if j is None else Vertex(Side.Y, j)
        i = self.partner_of_y[v.index]
        return None if i is None else Vertex(Side.X, i)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner_of_x) if j is not None]

    def matched_set(self, side: Side) -> frozenset[int]:
        """Indices on `side` that have a partner."""
        row = self.partner_of_x if side is Side.X else self.partner_of_y
        return frozenset(i for i, p in enumerate(row) if p is not None)

    @property
    def size(self) -> int:
        return sum(1 for p in self.partner_of_x if p is not None)

    @property
    def is_perfect(self) -> bool:
        return all(p is not None for p in self.partner_of_x) and all(
            p is not None for p in self.partner_of_y
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return (
            self.partner_of_x == other.partner_of_x
            and self.partner_of_y == other.partner_of_y
        )

    def __hash__(self) -> int:
        return hash(self.partner_of_x)

    def __repr__(self) -> str:
        return f"Matching({self.pairs()!r})"
