"""Strict preference instances over a graph's neighborhoods.

An instance gives every vertex a strict ranking of exactly its neighbors,
so acceptability coincides with the edge relation by construction and
"prefers being unmatched to an unacceptable partner" needs no sentinel.
"""

from __future__ import annotations

import math
import random
from itertools import permutations, product
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import InstanceCapExceeded, PreferenceError
from .graph import BipartiteGraph, Side, Vertex

DEFAULT_INSTANCE_CAP = 10**6

# rank reported for "unmatched": worse than any real list position
UNMATCHED_RANK = 1 << 30


class PreferenceInstance:
    """One strict ranking per vertex, most preferred first.

    x_lists[i] / y_lists[j] hold opposite-side indices. Rank dicts are
    precomputed so preference comparisons are O(1). The constructor trusts
    its input; use `validate` to build an instance from raw data.
    """

    __slots__ = ("x_lists", "y_lists", "x_rank", "y_rank")

    def __init__(
        self,
        x_lists: Iterable[Sequence[int]],
        y_lists: Iterable[Sequence[int]],
    ):
        self.x_lists = tuple(tuple(lst) for lst in x_lists)
        self.y_lists = tuple(tuple(lst) for lst in y_lists)
        self.x_rank = tuple(
            dict(zip(lst, range(len(lst)))) for lst in self.x_lists
        )
        self.y_rank = tuple(
            dict(zip(lst, range(len(lst)))) for lst in self.y_lists
        )

    def lists(self, side: Side) -> tuple[tuple[int, ...], ...]:
        return self.x_lists if side is Side.X else self.y_lists

    def ranks(self, side: Side) -> tuple[dict[int, int], ...]:
        return self.x_rank if side is Side.X else self.y_rank

    def list_for(self, v: Vertex) -> tuple[int, ...]:
        return self.lists(v.side)[v.index]

    def rank(self, v: Vertex, candidate: Optional[Vertex]) -> int:
        """Position of `candidate` in v's list; None (unmatched) ranks last."""
        if candidate is None:
            return UNMATCHED_RANK
        if candidate.side is v.side:
            raise PreferenceError(
                f"{v!r} cannot rank {candidate!r}: same side", vertex=v
            )
        try:
            return self.ranks(v.side)[v.index][candidate.index]
        except KeyError:
            raise PreferenceError(
                f"{candidate!r} is not acceptable to {v!r}", vertex=v
            ) from None
        except IndexError:
            raise PreferenceError(f"{v!r} has no preference list", vertex=v) from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreferenceInstance):
            return NotImplemented
        return self.x_lists == other.x_lists and self.y_lists == other.y_lists

    def __hash__(self) -> int:
        return hash((self.x_lists, self.y_lists))

    def __repr__(self) -> str:
        return f"PreferenceInstance({self.x_lists!r}, {self.y_lists!r})"


def validate(
    graph: BipartiteGraph,
    table: Mapping[Vertex, Sequence[Vertex]],
    describe: Callable[[Vertex], str] = repr,
) -> PreferenceInstance:
    """Check raw ranking data against the graph and build an instance.

    `table` must hold one entry per vertex of both sides, each an ordering
    of exactly that vertex's neighborhood. Every defect raises a
    PreferenceError naming the offending vertex; `describe` lets callers
    that own display names control how vertices are rendered.
    """
    for v in table:
        if not isinstance(v, Vertex) or not (
            0 <= v.index < graph.side_count(v.side)
        ):
            shown = describe(v) if isinstance(v, Vertex) else repr(v)
            raise PreferenceError(f"preference list given for unknown vertex {shown}")

    def build_side(side: Side) -> list[tuple[int, ...]]:
        rows = []
        for v in graph.vertices(side):
            if v not in table:
                raise PreferenceError(
                    f"no preference list for {describe(v)}", vertex=v
                )
            entries = table[v]
            seen = set()
            row = []
            for c in entries:
                if not isinstance(c, Vertex):
                    raise PreferenceError(
                        f"list for {describe(v)} contains {c!r}, not a vertex",
                        vertex=v,
                    )
                if c.side is v.side:
                    raise PreferenceError(
                        f"list for {describe(v)} contains same-side vertex "
                        f"{describe(c)}",
                        vertex=v,
                    )
                if c.index in seen:
                    raise PreferenceError(
                        f"list for {describe(v)} contains {describe(c)} twice",
                        vertex=v,
                    )
                seen.add(c.index)
                row.append(c.index)
            neighborhood = graph.adjacency(side)[v.index]
            for c_index in row:
                if c_index not in neighborhood:
                    raise PreferenceError(
                        f"list for {describe(v)} contains "
                        f"{describe(Vertex(side.opposite, c_index))}, "
                        f"which is not adjacent to it",
                        vertex=v,
                    )
            for n_index in neighborhood:
                if n_index not in seen:
                    raise PreferenceError(
                        f"list for {describe(v)} omits neighbor "
                        f"{describe(Vertex(side.opposite, n_index))}",
                        vertex=v,
                    )
            rows.append(tuple(row))
        return rows

    return PreferenceInstance(build_side(Side.X), build_side(Side.Y))


def instance_count(graph: BipartiteGraph) -> int:
    """|P| = product of (deg v)! over all vertices of both sides."""
    total = 1
    for row in graph.x_adj:
        total *= math.factorial(len(row))
    for row in graph.y_adj:
        total *= math.factorial(len(row))
    return total


def enumerate_all(
    graph: BipartiteGraph, cap: int = DEFAULT_INSTANCE_CAP
) -> Iterator[PreferenceInstance]:
    """Yield every preference instance exactly once.

    Order is lexicographic in per-vertex permutation indices, X side first.
    Refuses up front (with the computed count) when the instance count
    exceeds `cap`, so callers can fall back to sampling.
    """
    total = instance_count(graph)
    if total > cap:
        raise InstanceCapExceeded(total, cap)
    a = graph.x_count
    pools = [tuple(permutations(row)) for row in graph.x_adj]
    pools += [tuple(permutations(row)) for row in graph.y_adj]
    for combo in product(*pools):
        yield PreferenceInstance(combo[:a], combo[a:])


def sample_uniform(graph: BipartiteGraph, seed: int) -> PreferenceInstance:
    """One instance with each list an independent uniform permutation.

    Identical (graph, seed) pairs reproduce identical instances. Only that
    determinism and per-vertex uniformity are contractual; the underlying
    generator may change, so never compare outputs against recorded bits.
    """
    rng = random.Random(seed)

    def shuffled(rows: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
        out = []
        for row in rows:
            lst = list(row)
            rng.shuffle(lst)
            out.append(tuple(lst))
        return out

    return PreferenceInstance(shuffled(graph.x_adj), shuffled(graph.y_adj))


def prefers(
    instance: PreferenceInstance,
    v: Vertex,
    a: Optional[Vertex],
    b: Optional[Vertex],
) -> bool:
    """True iff v strictly prefers a to b; None stands for staying unmatched.

    Any acceptable partner beats None; None beats nothing acceptable.
    Comparing a vertex outside v's neighborhood is an error.
    """
    return instance.rank(v, a) < instance.rank(v, b)
