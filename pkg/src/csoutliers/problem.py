"""Problem inputs, solutions and peeling traces shared by solvers and oracle."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph


class Variant(str, enum.Enum):
    """The three community-search-with-outliers problems.

    ``MIN_DIAM_MIN_DEG``: minimise diameter subject to a minimum-degree floor.
    ``MAX_MIN_DEG_DIAM``: maximise minimum degree subject to a diameter cap.
    ``MAX_MIN_DEG_DIST``: maximise minimum degree subject to every vertex
    lying within a distance cap of a retained query vertex.
    """

    MIN_DIAM_MIN_DEG = "min-diam"
    MAX_MIN_DEG_DIAM = "max-deg-diam"
    MAX_MIN_DEG_DIST = "max-deg-dist"

    @property
    def parameter_name(self) -> str:
        return {"min-diam": "delta_min", "max-deg-diam": "diam_max", "max-deg-dist": "d_max"}[self.value]

    @property
    def minimises(self) -> bool:
        return self is Variant.MIN_DIAM_MIN_DEG


@dataclass(frozen=True)
class QuerySet:
    """Query vertices ``Q`` and the number ``k`` of them that may be dropped."""

    Q: frozenset[int]
    k: int = 0

    def __init__(self, Q: Iterable[int], k: int = 0):
        object.__setattr__(self, "Q", frozenset(Q))
        object.__setattr__(self, "k", k)
        if not self.Q:
            raise ValueError("query set must be non-empty")
        if not 0 <= k <= len(self.Q) - 1:
            raise ValueError(f"outlier budget k={k} must satisfy 0 <= k <= |Q|-1 = {len(self.Q) - 1}")

    @property
    def required(self) -> int:
        """Minimum number of query vertices a solution must keep."""
        return len(self.Q) - self.k

    def validate(self, G: Graph) -> None:
        bad = [q for q in self.Q if not 0 <= q < G.n]
        if bad:
            raise ValueError(f"query vertices {sorted(bad)} not in graph with n={G.n}")


@dataclass(frozen=True)
class ProblemSpec:
    variant: Variant
    parameter: int

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        lo = 0 if self.variant is Variant.MIN_DIAM_MIN_DEG else 1
        if self.parameter < lo:
            raise ValueError(f"{self.variant.parameter_name} must be >= {lo}, got {self.parameter}")


@dataclass(frozen=True)
class Solution:
    """A returned community ``H`` or the unfeasible outcome.

    ``objective`` is the diameter of ``H`` for ``min-diam`` and its minimum
    degree for the two max-degree variants. ``vertices`` are ids of the graph
    the solver was called on, sorted.
    """

    variant: Variant
    feasible: bool
    vertices: tuple[int, ...] = ()
    objective: int | None = None
    query_hits: int = 0
    start: int | None = None

    @classmethod
    def unfeasible(cls, variant: Variant, start: int | None = None) -> "Solution":
        return cls(Variant(variant), False, start=start)

    def __bool__(self) -> bool:
        return self.feasible


@dataclass(frozen=True)
class Removal:
    step: int
    vertex: int
    reason: str


@dataclass(frozen=True)
class Candidate:
    """A feasible snapshot met during peeling.

    The snapshot is the graph left after the first ``step`` removals (for
    rooted peels, the component of the start vertex; otherwise the component
    of ``anchor``). ``vertices`` is filled only when the peel was asked to
    record sets.
    """

    step: int
    score: int
    query_hits: int
    size: int
    anchor: int
    vertices: frozenset[int] | None = None


REASONS = (
    "degree-violation",
    "distance-violation",
    "query-count-violation",
    "max-distance-from-q",
    "min-degree",
)


@dataclass
class PeelTrace:
    removals: list[Removal] = field(default_factory=list)
    candidates: list[Candidate] = field(default_factory=list)
    stopped_on_start: bool = False

    def removed_before(self, step: int) -> set[int]:
        return {r.vertex for r in self.removals[:step]}
