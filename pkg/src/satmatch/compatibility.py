"""Block-structured markets: class memberships on X, a class partition on Y.

Each X-vertex belongs to one or more classes (overlaps allowed, but every
class must have at least one exclusive member); each Y-vertex belongs to
exactly one class. Acceptability is class membership: the induced graph has
an edge (x, y) exactly when y's class is one of x's. A preference instance
on that induced graph is automatically class-wise complete — every vertex
ranks all compatible partners — which is the only preference regime these
verdicts quantify over.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from . import analysis
from .errors import InputError
from .graph import BipartiteGraph, Side


@dataclass(frozen=True)
class CompatibilityMarket:
    """n_classes classes; x_membership[i] a nonempty frozenset of class
    indices; y_class[j] a single class index. Validated on construction."""

    n_classes: int
    x_membership: tuple[frozenset[int], ...]
    y_class: tuple[int, ...]

    def __post_init__(self):
        if self.n_classes < 1:
            raise InputError(f"need at least one class, got {self.n_classes}")
        for i, classes in enumerate(self.x_membership):
            if not classes:
                raise InputError(f"x[{i}] belongs to no class")
            for c in classes:
                if not (0 <= c < self.n_classes):
                    raise InputError(f"x[{i}] names unknown class {c}")
        for j, c in enumerate(self.y_class):
            if not (0 <= c < self.n_classes):
                raise InputError(f"y[{j}] names unknown class {c}")
        for c in range(self.n_classes):
            if not any(m == {c} for m in self.x_membership):
                raise InputError(
                    f"class {c} has no exclusive member: some X-vertex must "
                    f"belong to it and to no other class"
                )

    @classmethod
    def build(
        cls,
        n_classes: int,
        x_membership: Iterable[Iterable[int]],
        y_class: Sequence[int],
    ) -> "CompatibilityMarket":
        return cls(
            n_classes=n_classes,
            x_membership=tuple(frozenset(m) for m in x_membership),
            y_class=tuple(y_class),
        )

    def class_members(self, c: int) -> list[int]:
        """A_c: the X-vertices belonging to class c."""
        return [i for i, m in enumerate(self.x_membership) if c in m]

    def class_slots(self, c: int) -> list[int]:
        """B_c: the Y-vertices assigned to class c."""
        return [j for j, yc in enumerate(self.y_class) if yc == c]

    def exclusive_members(self, c: int) -> list[int]:
        return [i for i, m in enumerate(self.x_membership) if m == {c}]


def induced_graph(market: CompatibilityMarket) -> BipartiteGraph:
    """The acceptability graph: (x, y) is an edge iff y's class is one of x's."""
    edges = [
        (i, j)
        for i, classes in enumerate(market.x_membership)
        for j, c in enumerate(market.y_class)
        if c in classes
    ]
    return BipartiteGraph(len(market.x_membership), len(market.y_class), edges)


class ClassSizes(NamedTuple):
    members: int  # |A_i|
    slots: int  # |B_i|


@dataclass(frozen=True)
class CoverageVerdict:
    """Does every stable matching saturate X for every class-wise-complete
    instance? Holds exactly when no class has more members than slots."""

    holds: bool
    classes: tuple[ClassSizes, ...]

    def deficient_classes(self) -> list[int]:
        return [c for c, s in enumerate(self.classes) if s.slots < s.members]


def coverage_verdict(market: CompatibilityMarket) -> CoverageVerdict:
    sizes = tuple(
        ClassSizes(len(market.class_members(c)), len(market.class_slots(c)))
        for c in range(market.n_classes)
    )
    return CoverageVerdict(
        holds=all(s.slots >= s.members for s in sizes), classes=sizes
    )


@dataclass(frozen=True)
class ConsistencyReport:
    coverage: CoverageVerdict
    saturation: analysis.SaturationVerdict
    consistent: bool


def verdict_consistency(market: CompatibilityMarket) -> ConsistencyReport:
    """Cross-check the class-size verdict against the structural one.

    Class coverage quantifies over class-wise-complete instances only, the
    structural verdict over all instances on the induced graph, so coverage
    holding while the structural verdict fails would mean one of the two
    checkers is wrong: only that combination is flagged inconsistent.
    """
    cov = coverage_verdict(market)
    sat = analysis.saturation_verdict(induced_graph(market), Side.X)
    return ConsistencyReport(
        coverage=cov,
        saturation=sat,
        consistent=not (cov.holds and not sat.holds),
    )


def deficient_witness(market: CompatibilityMarket) -> Optional[int]:
    """The lowest-index exclusive member of the lowest-index deficient class,
    or None when every class covers its members."""
    cov = coverage_verdict(market)
    for c in cov.deficient_classes():
        exclusive = market.exclusive_members(c)
        if exclusive:
            return exclusive[0]
    return None
