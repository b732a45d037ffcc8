from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from services.errors import OutOfRange
from services.graph_core.models import DualGraph
from services.pair_predicates.models import LogPair


@dataclass(frozen=True)
class SectionPattern:
    """How an exceptional section of the ruling meets C and Σ."""
    # local intersection orders with C at each contact point
    contacts: Tuple[int, ...] = (4,)
    degree: int = 1
    meets_sigma: bool = False

    def __post_init__(self):
        if self.degree < 1:
            raise OutOfRange(f"section degree must be positive, got {self.degree}")
        if not self.contacts or any(c < 1 for c in self.contacts):
            raise OutOfRange(f"contact orders must be positive, got {self.contacts}")

    @property
    def c_intersection(self) -> int:
        return sum(self.contacts)


@dataclass(frozen=True)
class SearchState:
    pair: LogPair
    provenance: Tuple[str, ...] = ()
    s_c_label: Optional[str] = None
    # exceptional sections (the r of the Zhang count); empty in the r = 0 regime
    sections: Tuple[SectionPattern, ...] = ()

    @property
    def graph(self) -> DualGraph:
        return self.pair.graph

    @property
    def c_squared(self) -> int:
        return self.graph.weight(self.pair.c)

    def child(self, graph: DualGraph, move: str, s_c_label: Optional[str] = None) -> "SearchState":
        return replace(
            self,
            pair=LogPair(graph, self.pair.b),
            provenance=self.provenance + (move,),
            s_c_label=s_c_label if s_c_label is not None else self.s_c_label,
        )


@dataclass(frozen=True)
class FilterDecision:
    accepted: bool
    reason: str
    c_squared: Optional[int] = None
    # the Case 1 state a section configuration reduces to
    reduced: Optional[SearchState] = None


@dataclass
class RejectionLog:
    counts: Counter = field(default_factory=Counter)
    first_seen: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def record(self, reason: str, provenance: Tuple[str, ...] = ()):
        self.counts[reason] += 1
        self.first_seen.setdefault(reason, provenance)

    def merge(self, other: "RejectionLog"):
        for reason, count in other.counts.items():
            self.counts[reason] += count
            self.first_seen.setdefault(reason, other.first_seen[reason])

    @property
    def reasons(self) -> List[str]:
        return sorted(self.counts)


@dataclass
class SearchResult:
    accepted: List[SearchState]
    visited: int
    duplicates: int
    rejections: RejectionLog


@dataclass(frozen=True)
class PlaneExclusionReport:
    """Numbers behind ruling out P^2 as the smooth model with one curve over each centre."""
    degree: Fraction
    # upper bound for Σ d_j deg(E_j) on P^2
    star_bound: Fraction
    two_points_lower: Fraction
    non_lt_lower: Fraction
    first_blowup_coefficient: Fraction
    crepant_coefficients: Tuple[Fraction, ...]

    @property
    def excluded(self) -> bool:
        return (
            self.star_bound < self.two_points_lower
            and self.star_bound < self.non_lt_lower
            and self.first_blowup_coefficient not in self.crepant_coefficients
        )
