"""Saturation analysis.

Decides whether every stable matching of a graph saturates one side no
matter what the preferences are. The decisive per-vertex question: can
v's neighborhood be fully absorbed by v's competitors — is there a
matching, avoiding v, that covers every option in N(v)?

* If yes, preferences exist that pair every option with a competitor it
  prefers to v (each such pair ranks the other first), stranding v in
  every stable matching of that instance.
* If no, some set of options is a `blockade`: more options than the
  competitors adjacent to them, so however the options match away from v,
  one of them is left over — and an unmatched option next to an unmatched
  v is a blocking pair. v is matched in every stable matching of every
  instance, and the blockade set is the certificate.

Two cheap certificates are reported alongside because they explain most
real cases and need no matching computation:

* bounded claimants — the vertices competing for v's options, N(N(v)),
  are no more numerous than the options N(v) themselves (then N(v) itself
  is a blockade);
* a dedicated neighbor — some neighbor of v has no other option (a
  one-vertex blockade).

Either implies a blockade, but not conversely: two options sharing their
only competitor block absorption even when the claimant count stays under
the option count and nobody is dedicated.

The perfect-matching variants characterize when every stable matching is
perfect for all preferences: for a connected balanced graph this happens
exactly when the graph is a balanced biclique, and in general exactly when
every component is a balanced biclique.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import InputError
from .graph import BipartiteGraph, Side, Vertex
from .prefs import PreferenceInstance


class ClaimantBound(NamedTuple):
    bounded: bool  # claimants <= options
    options: int  # |N(v)|
    claimants: int  # |N(N(v))|


@dataclass(frozen=True)
class VertexReport:
    """Per-vertex certificate data.

    `satisfied` means v is matched in every stable matching of every
    preference instance; `blockade` is the certifying option set (present
    exactly when satisfied). `bounded` and `dedicated` are the cheap
    sufficient certificates. An isolated vertex is vacuously bounded
    (0 <= 0) yet can never be matched: blockade None, satisfied False,
    isolated True.
    """

    vertex: Vertex
    options: int
    claimants: int
    bounded: bool
    dedicated: Optional[Vertex]
    blockade: Optional[tuple[Vertex, ...]]
    satisfied: bool
    isolated: bool


@dataclass(frozen=True)
class SaturationVerdict:
    """Does every stable matching saturate `side`, for every instance?

    holds ⇔ every report is satisfied. When false because some
    non-isolated vertex lacks a blockade, `counterexample` carries that
    vertex and an adversarial instance leaving it unmatched in every
    stable matching; an all-isolated failure carries no counterexample
    (no instance is needed — an isolated vertex is never matched).
    """

    side: Side
    holds: bool
    reports: tuple[VertexReport, ...]
    counterexample: Optional[tuple[Vertex, PreferenceInstance]]


def claimant_bound(graph: BipartiteGraph, v: Vertex) -> ClaimantBound:
    """Compare |N(N(v))| against |N(v)|.

    N(N(v)) always contains v itself when v has any neighbor, so the bound
    says: everyone competing for v's options can, counting-wise, be matched
    within them.
    """
    graph.check_vertex(v)
    adj = graph.adjacency(v.side)
    coadj = graph.adjacency(v.side.opposite)
    row = adj[v.index]
    claimants: set[int] = set()
    for u in row:
        claimants.update(coadj[u])
    return ClaimantBound(len(claimants) <= len(row), len(row), len(claimants))


def dedicated_neighbor(graph: BipartiteGraph, v: Vertex) -> Optional[Vertex]:
    """The lowest-index neighbor of v whose only neighbor is v, if any."""
    graph.check_vertex(v)
    coadj = graph.adjacency(v.side.opposite)
    for u in graph.adjacency(v.side)[v.index]:
        if len(coadj[u]) == 1:
            return Vertex(v.side.opposite, u)
    return None


def _absorption(
    graph: BipartiteGraph, v: Vertex
) -> tuple[Optional[dict[int, int]], Optional[tuple[int, ...]]]:
    """Try to match every option in N(v) to a distinct competitor.

    Returns (champions, None) on success — champions maps each option
    index to its competitor index — or (None, blockade) on failure, where
    blockade is a set of option indices adjacent to strictly fewer
    competitors than its own size (the alternating-reachability witness
    from the option the search could not place).
    """
    graph.check_vertex(v)
    adj = graph.adjacency(v.side)
    coadj = graph.adjacency(v.side.opposite)
    taken: dict[int, int] = {}  # competitor -> option it absorbs

    def extend(u: int, seen: set[int]) -> bool:
        for c in coadj[u]:
            if c == v.index or c in seen:
                continue
            seen.add(c)
            if c not in taken or extend(taken[c], seen):
                taken[c] = u
                return True
        return False

    for u in adj[v.index]:
        if not extend(u, set()):
            stuck = {u}
            frontier = [u]
            competitors: set[int] = set()
            while frontier:
                w = frontier.pop()
                for c in coadj[w]:
                    if c == v.index or c in competitors:
                        continue
                    competitors.add(c)
                    # reachable competitors are matched, else the search
                    # would have augmented through them
                    nxt = taken[c]
                    if nxt not in stuck:
                        stuck.add(nxt)
                        frontier.append(nxt)
            return None, tuple(sorted(stuck))
    return {u: c for c, u in taken.items()}, None


def blockade(graph: BipartiteGraph, v: Vertex) -> Optional[tuple[Vertex, ...]]:
    """A set of v's options outnumbering their competitors, if one exists.

    Present exactly when v is matched in every stable matching of every
    preference instance (for non-isolated v). None means v's neighborhood
    can be absorbed away from v — see adversarial_instance.
    """
    _, stuck = _absorption(graph, v)
    if stuck is None:
        return None
    return tuple(Vertex(v.side.opposite, u) for u in stuck)


def vertex_report(graph: BipartiteGraph, v: Vertex) -> VertexReport:
    bound = claimant_bound(graph, v)
    dedicated = dedicated_neighbor(graph, v)
    shield = blockade(graph, v)
    return VertexReport(
        vertex=v,
        options=bound.options,
        claimants=bound.claimants,
        bounded=bound.bounded,
        dedicated=dedicated,
        blockade=shield,
        satisfied=shield is not None,
        isolated=bound.options == 0,
    )


def saturation_verdict(graph: BipartiteGraph, side: Side = Side.X) -> SaturationVerdict:
    """The full verdict for one side, with per-vertex certificates."""
    reports = tuple(vertex_report(graph, v) for v in graph.vertices(side))
    holds = all(r.satisfied for r in reports)
    counterexample = None
    if not holds:
        failing = next(
            (r for r in reports if not r.satisfied and not r.isolated), None
        )
        if failing is not None:
            counterexample = (
                failing.vertex,
                adversarial_instance(graph, failing.vertex),
            )
    return SaturationVerdict(
        side=side, holds=holds, reports=reports, counterexample=counterexample
    )


def adversarial_instance(graph: BipartiteGraph, v: Vertex) -> PreferenceInstance:
    """A preference instance under which v is unmatched in every stable matching.

    Exists exactly when v is not isolated and has no blockade; raises an
    InputError naming the guarantee v actually has otherwise. The
    construction fixes a champion competitor for every option of v (the
    absorbing matching) and sets:

    * every option of v ranks its champion first, its other neighbors
      next by ascending index, and v dead last;
    * every claimant other than v ranks its neighbors inside N(v) above
      its neighbors outside N(v), each block ascending, except that a
      champion puts the option it absorbs first;
    * all remaining lists are plain ascending.

    Each champion and its option rank each other first, so every stable
    matching pairs them (a mutual-first pair left apart blocks). That
    covers all of N(v), and v — ranked last by every option — is left
    unmatched in every stable matching, not merely in one.
    """
    graph.check_vertex(v)
    bound = claimant_bound(graph, v)
    if bound.options == 0:
        raise InputError(
            f"{v!r} is isolated: it is unmatched in every matching already, "
            f"no special instance is needed"
        )
    if bound.bounded:
        raise InputError(
            f"{v!r} is guaranteed a partner in every stable matching: its "
            f"{bound.claimants} claimants fit within its {bound.options} options"
        )
    dedicated = dedicated_neighbor(graph, v)
    if dedicated is not None:
        raise InputError(
            f"{v!r} is guaranteed a partner in every stable matching: its "
            f"neighbor {dedicated!r} has degree 1, dedicated to it"
        )
    champions, stuck = _absorption(graph, v)
    if champions is None:
        shown = ", ".join(
            repr(Vertex(v.side.opposite, u)) for u in stuck
        )
        across = set()
        coadj = graph.adjacency(v.side.opposite)
        for u in stuck:
            across.update(coadj[u])
        across.discard(v.index)
        plural = "competitor" if len(across) == 1 else "competitors"
        raise InputError(
            f"{v!r} is guaranteed a partner in every stable matching: its "
            f"options {shown} have only {len(across)} {plural} besides it, "
            f"so one of them always falls to it"
        )

    adj = graph.adjacency(v.side)
    coadj = graph.adjacency(v.side.opposite)
    options = set(adj[v.index])
    absorbs = {c: u for u, c in champions.items()}  # competitor -> its option

    claimants: set[int] = set()
    for u in adj[v.index]:
        claimants.update(coadj[u])
    claimants.discard(v.index)

    # v's side: claimants crowd into N(v), champions lead with their option;
    # v itself and bystanders rank by ascending index.
    same_side_lists = []
    for i, row in enumerate(adj):
        if i in claimants:
            inside = [u for u in row if u in options]
            outside = [u for u in row if u not in options]
            if i in absorbs:
                first = absorbs[i]
                inside = [first] + [u for u in inside if u != first]
            same_side_lists.append(tuple(inside + outside))
        else:
            same_side_lists.append(tuple(row))

    # opposite side: v's options rank champion first and v dead last;
    # everyone else ascending.
    other_side_lists = []
    for u, row in enumerate(coadj):
        if u in options:
            first = champions[u]
            rest = [w for w in row if w != v.index and w != first]
            other_side_lists.append(tuple([first] + rest + [v.index]))
        else:
            other_side_lists.append(tuple(row))

    if v.side is Side.X:
        return PreferenceInstance(same_side_lists, other_side_lists)
    return PreferenceInstance(other_side_lists, same_side_lists)


class CompletenessVerdict(NamedTuple):
    holds: bool
    missing_edge: Optional[tuple[Vertex, Vertex]]


def connected_perfect_verdict(graph: BipartiteGraph) -> CompletenessVerdict:
    """For a connected balanced graph: is every stable matching perfect, always?

    Holds exactly when the graph is a balanced biclique. When false, the
    lowest-index missing edge is reported. Disconnected or unbalanced input
    is an error; use component_perfect_verdict for those.
    """
    if graph.x_count != graph.y_count or graph.x_count == 0:
        raise InputError(
            f"needs a connected graph with equal nonempty sides, got "
            f"{graph.x_count}+{graph.y_count}; for general graphs use "
            f"component_perfect_verdict"
        )
    if not graph.is_connected():
        raise InputError(
            "needs a connected graph; for disconnected graphs use "
            "component_perfect_verdict"
        )
    if graph.is_biclique():
        return CompletenessVerdict(True, None)
    for xi, row in enumerate(graph.x_adj):
        have = set(row)
        for yi in range(graph.y_count):
            if yi not in have:
                return CompletenessVerdict(
                    False, (Vertex(Side.X, xi), Vertex(Side.Y, yi))
                )
    raise AssertionError("unreachable: non-biclique with no missing edge")


@dataclass(frozen=True)
class ComponentSummary:
    x_vertices: tuple[int, ...]
    y_vertices: tuple[int, ...]
    biclique: bool
    balanced: bool


@dataclass(frozen=True)
class ComponentVerdict:
    holds: bool
    components: tuple[ComponentSummary, ...]


def component_perfect_verdict(graph: BipartiteGraph) -> ComponentVerdict:
    """For a balanced graph: is every stable matching perfect, always?

    Holds exactly when every component is a biclique with equal side sizes.
    Component-level balance matters: two bicliques of shapes 1x2 and 2x1
    balance globally, yet each strands a vertex in every matching.
    """
    if graph.x_count != graph.y_count:
        raise InputError(
            f"sides must balance for a perfect matching to exist at all, "
            f"got {graph.x_count}+{graph.y_count}"
        )
    summaries = []
    for piece in graph.components():
        summaries.append(
            ComponentSummary(
                x_vertices=piece.x_vertices,
                y_vertices=piece.y_vertices,
                biclique=piece.graph.is_biclique(),
                balanced=piece.graph.x_count == piece.graph.y_count,
            )
        )
    holds = all(s.biclique and s.balanced for s in summaries)
    return ComponentVerdict(holds=holds, components=tuple(summaries))


@dataclass(frozen=True)
class PerfectVerdict:
    holds: bool
    x: SaturationVerdict
    y: SaturationVerdict


def perfect_verdict(graph: BipartiteGraph) -> PerfectVerdict:
    """Is every stable matching perfect for every instance? Any graph allowed.

    A matching is perfect iff it saturates both sides, so this is the
    conjunction of the two one-sided verdicts; on balanced graphs it agrees
    with component_perfect_verdict.
    """
    vx = saturation_verdict(graph, Side.X)
    vy = saturation_verdict(graph, Side.Y)
    return PerfectVerdict(holds=vx.holds and vy.holds, x=vx, y=vy)
