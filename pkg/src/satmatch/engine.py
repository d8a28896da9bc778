"""Stable-matching engine.

Deferred acceptance, stability checks, exhaustive enumeration of all stable
matchings, classical maximum matching, and the matched-set invariance that
enumeration asserts before returning (the set of unmatched vertices is the
same in every stable matching of an instance, so a disagreement can only be
an engine bug).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import EngineInvariantError, InputError, SearchCapExceeded
from .graph import BipartiteGraph, Matching, Side, Vertex
from .prefs import UNMATCHED_RANK, PreferenceInstance

DEFAULT_NODE_CAP = 10**7


class BlockingPair(NamedTuple):
    x: Vertex
    y: Vertex


@dataclass(frozen=True)
class StableSet:
    """The complete set of stable matchings of one instance.

    matched_x / matched_y hold the indices matched in every member; the
    constructor path (enumerate_stable) has already asserted that those
    sets agree across members on both sides.
    """

    graph: BipartiteGraph
    matchings: tuple[Matching, ...]
    matched_x: frozenset[int]
    matched_y: frozenset[int]
    nodes_visited: int

    @property
    def x_saturating(self) -> bool:
        return len(self.matched_x) == self.graph.x_count

    @property
    def y_saturating(self) -> bool:
        return len(self.matched_y) == self.graph.y_count

    @property
    def perfect(self) -> bool:
        return self.x_saturating and self.y_saturating


def _check_shapes(graph: BipartiteGraph, instance: PreferenceInstance) -> None:
    if len(instance.x_lists) != graph.x_count or len(instance.y_lists) != graph.y_count:
        raise InputError(
            f"instance shaped for {len(instance.x_lists)}+{len(instance.y_lists)} "
            f"vertices, graph has {graph.x_count}+{graph.y_count}"
        )


def _propose(
    lists: tuple[tuple[int, ...], ...],
    other_rank: tuple[dict[int, int], ...],
    other_count: int,
) -> tuple[list[int], list[int]]:
    """One-sided deferred acceptance on index arrays; -1 marks unmatched.

    The lowest-index free proposer moves each round (a min-heap), which
    makes runs reproducible; the outcome is order-independent anyway.
    """
    n = len(lists)
    partner = [-1] * n
    other_partner = [-1] * other_count
    next_choice = [0] * n
    free = [i for i in range(n) if lists[i]]
    heapq.heapify(free)
    while free:
        p = heapq.heappop(free)
        choices = lists[p]
        target = choices[next_choice[p]]
        next_choice[p] += 1
        holder = other_partner[target]
        if holder < 0:
            partner[p] = target
            other_partner[target] = p
        elif other_rank[target][p] < other_rank[target][holder]:
            partner[p] = target
            other_partner[target] = p
            partner[holder] = -1
            if next_choice[holder] < len(lists[holder]):
                heapq.heappush(free, holder)
        else:
            if next_choice[p] < len(choices):
                heapq.heappush(free, p)
    return partner, other_partner


def _to_partner_tuple(row: list[int]) -> tuple[Optional[int], ...]:
    return tuple(None if i < 0 else i for i in row)


def deferred_acceptance(
    graph: BipartiteGraph,
    instance: PreferenceInstance,
    proposing: Side = Side.X,
) -> Matching:
    """The proposing side's optimal stable matching (Gale–Shapley).

    With proposing = X every X-vertex weakly prefers its partner here to
    its partner in any other stable matching; at most one proposal per
    edge is made.
    """
    _check_shapes(graph, instance)
    if proposing is Side.X:
        px, py = _propose(instance.x_lists, instance.y_rank, graph.y_count)
    else:
        py, px = _propose(instance.y_lists, instance.x_rank, graph.x_count)
    return Matching(_to_partner_tuple(px), _to_partner_tuple(py))


def find_blocking_pairs(
    graph: BipartiteGraph,
    instance: PreferenceInstance,
    matching: Matching,
) -> list[BlockingPair]:
    """All blocking pairs of `matching`, in ascending (x-index, y-index) order.

    An edge (x, y) blocks when both endpoints strictly prefer each other to
    their current partners (an unmatched endpoint prefers any neighbor).
    """
    _check_shapes(graph, instance)
    if (
        len(matching.partner_of_x) != graph.x_count
        or len(matching.partner_of_y) != graph.y_count
    ):
        raise InputError("matching does not fit the graph")
    out = []
    px = matching.partner_of_x
    py = matching.partner_of_y
    for xi in range(graph.x_count):
        xr = instance.x_rank[xi]
        p = px[xi]
        limit = UNMATCHED_RANK if p is None else xr[p]
        for yi in graph.x_adj[xi]:
            if xr[yi] < limit:
                holder = py[yi]
                if holder is None or instance.y_rank[yi][xi] < instance.y_rank[yi][holder]:
                    out.append(BlockingPair(Vertex(Side.X, xi), Vertex(Side.Y, yi)))
    return out


def is_stable(
    graph: BipartiteGraph,
    instance: PreferenceInstance,
    matching: Matching,
) -> bool:
    """True iff no edge blocks the matching (early exit on the first)."""
    _check_shapes(graph, instance)
    px = matching.partner_of_x
    py = matching.partner_of_y
    for xi in range(graph.x_count):
        xr = instance.x_rank[xi]
        p = px[xi]
        limit = UNMATCHED_RANK if p is None else xr[p]
        for yi in graph.x_adj[xi]:
            if xr[yi] < limit:
                holder = py[yi]
                if holder is None or instance.y_rank[yi][xi] < instance.y_rank[yi][holder]:
                    return False
    return True


def _stable_vectors(
    graph: BipartiteGraph,
    instance: PreferenceInstance,
    cap: int,
) -> tuple[list[tuple[int, ...]], int]:
    """Backtracking core: every stable assignment as an X-partner vector.

    Decides X-vertices in index order, trying each vertex's choices in its
    own preference order and finally "stay unmatched". Two sound cuts drop
    branches that already contain a definite blocking pair among decided
    vertices; a full stability scan at each leaf is the authority, so the
    cuts only need to never drop a stable leaf. -1 marks unmatched. Raises
    once more than `cap` nodes (choices) have been tried.
    """
    x_lists = instance.x_lists
    x_rank = instance.x_rank
    y_rank = instance.y_rank
    y_adj = graph.y_adj
    a = graph.x_count
    px = [-1] * a
    py = [-1] * graph.y_count
    out: list[tuple[int, ...]] = []
    nodes = 0

    estimate = 1
    for lst in x_lists:
        estimate *= len(lst) + 1

    def leaf_is_stable() -> bool:
        for k in range(a):
            pk = px[k]
            yr_rank = y_rank
            for y in x_lists[k]:
                if y == pk:
                    break
                j = py[y]
                if j < 0 or yr_rank[y][k] < yr_rank[y][j]:
                    return False
        return True

    def holder_blocks(k: int, y: int) -> bool:
        # would giving y to x_k leave an earlier-decided x_j that y prefers
        # and that prefers y to its own assignment? (definite block (j, y))
        yr = y_rank[y]
        rk = yr[k]
        for j in y_adj[y]:
            if j >= k:
                break
            if yr[j] < rk:
                pj = px[j]
                if pj < 0 or x_rank[j][y] < x_rank[j][pj]:
                    return True
        return False

    def extend(k: int) -> None:
        nonlocal nodes
        if k == a:
            if leaf_is_stable():
                out.append(tuple(px))
            return
        for y in x_lists[k]:
            nodes += 1
            if nodes > cap:
                raise SearchCapExceeded(nodes, cap, estimate)
            j = py[y]
            if j < 0:
                if not holder_blocks(k, y):
                    px[k] = y
                    py[y] = k
                    extend(k + 1)
                    px[k] = -1
                    py[y] = -1
            elif y_rank[y][k] < y_rank[y][j]:
                # y is held by a decided vertex it likes less than x_k, so
                # every worse choice for x_k (including unmatched) makes
                # (x_k, y) a definite blocking pair: cut the whole tail.
                return
        nodes += 1
        if nodes > cap:
            raise SearchCapExceeded(nodes, cap, estimate)
        extend(k + 1)  # x_k stays unmatched

    extend(0)
    return out, nodes


def enumerate_stable(
    graph: BipartiteGraph,
    instance: PreferenceInstance,
    cap: int = DEFAULT_NODE_CAP,
) -> StableSet:
    """The complete set of stable matchings, sorted by partner vector.

    Unmatched sorts before any partner index, so the first member is the
    one leaving the lowest-indexed vertices unmatched... which, by the
    matched-set invariance this function asserts before returning, differs
    from the others only in who is matched to whom, never in who is matched.
    """
    _check_shapes(graph, instance)
    vectors, nodes = _stable_vectors(graph, instance, cap)
    if not vectors:
        raise EngineInvariantError(
            "search found no stable matching, but one always exists"
        )
    vectors.sort()
    matched_x = frozenset(k for k, v in enumerate(vectors[0]) if v >= 0)
    matched_y = frozenset(v for v in vectors[0] if v >= 0)
    matchings = []
    for vec in vectors:
        mx = frozenset(k for k, v in enumerate(vec) if v >= 0)
        my = frozenset(v for v in vec if v >= 0)
        if mx != matched_x or my != matched_y:
            raise EngineInvariantError(
                f"matched sets differ across stable matchings: "
                f"{sorted(matched_x)}/{sorted(matched_y)} vs "
                f"{sorted(mx)}/{sorted(my)} — engine bug"
            )
        py: list[Optional[int]] = [None] * graph.y_count
        for k, v in enumerate(vec):
            if v >= 0:
                py[v] = k
        matchings.append(Matching(_to_partner_tuple(list(vec)), py))
    return StableSet(
        graph=graph,
        matchings=tuple(matchings),
        matched_x=matched_x,
        matched_y=matched_y,
        nodes_visited=nodes,
    )


def maximum_matching(graph: BipartiteGraph) -> Matching:
    """A maximum-cardinality matching via augmenting paths (stability ignored).

    The matching itself is not unique; its size is, and that size is what
    the saturation cross-checks consume.
    """
    match_y = [-1] * graph.y_count
    x_adj = graph.x_adj

    def augment(x: int, seen: list[bool]) -> bool:
        for y in x_adj[x]:
            if not seen[y]:
                seen[y] = True
                if match_y[y] < 0 or augment(match_y[y], seen):
                    match_y[y] = x
                    return True
        return False

    for x in range(graph.x_count):
        augment(x, [False] * graph.y_count)
    px: list[Optional[int]] = [None] * graph.x_count
    for y, x in enumerate(match_y):
        if x >= 0:
            px[x] = y
    return Matching(px, _to_partner_tuple(match_y))


def matched_set(matching: Matching, side: Side) -> frozenset[int]:
    """Indices on `side` that have a partner (alias for Matching.matched_set)."""
    return matching.matched_set(side)
