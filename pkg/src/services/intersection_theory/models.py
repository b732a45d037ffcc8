from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from . import linear_algebra


@dataclass(frozen=True)
class Divisor:
    """A rational combination a·K + Σ c_v·v of tracked curves."""
    components: Mapping[str, Fraction] = field(default_factory=dict)
    canonical: Fraction = Fraction(0)

    def __post_init__(self):
        cleaned = {v: Fraction(c) for v, c in sorted(self.components.items()) if c != 0}
        object.__setattr__(self, "components", cleaned)
        object.__setattr__(self, "canonical", Fraction(self.canonical))

    def coefficient(self, vertex_id: str) -> Fraction:
        return self.components.get(vertex_id, Fraction(0))

    @property
    def support(self) -> List[str]:
        return list(self.components)

    def restricted(self, keep) -> "Divisor":
        return Divisor({v: c for v, c in self.components.items() if v in keep}, self.canonical)

    def __add__(self, other: "Divisor") -> "Divisor":
        merged = dict(self.components)
        for v, c in other.components.items():
            merged[v] = merged.get(v, Fraction(0)) + c
        return Divisor(merged, self.canonical + other.canonical)

    def __neg__(self) -> "Divisor":
        return self * -1

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, scalar) -> "Divisor":
        scalar = Fraction(scalar)
        return Divisor({v: c * scalar for v, c in self.components.items()}, self.canonical * scalar)

    __rmul__ = __mul__

    def __str__(self) -> str:
        terms = []
        if self.canonical:
            terms.append(f"{self.canonical}K")
        terms.extend(f"{c}{v}" for v, c in self.components.items())
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class IntersectionMatrix:
    ids: Tuple[str, ...]
    entries: Tuple[Tuple[int, ...], ...]

    @property
    def array(self) -> np.ndarray:
        return linear_algebra.as_fraction_array(self.entries)

    def determinant(self) -> Fraction:
        return linear_algebra.determinant(self.array)

    def is_negative_definite(self) -> bool:
        return linear_algebra.is_negative_definite(self.array)


@dataclass(frozen=True)
class CrepantData:
    coefficients: Dict[str, Fraction]

    def coefficient(self, vertex_id: str) -> Fraction:
        return self.coefficients.get(vertex_id, Fraction(0))

    def log_discrepancy(self, vertex_id: str) -> Fraction:
        return 1 - self.coefficient(vertex_id)

    @property
    def non_log_canonical(self) -> List[str]:
        return [v for v, e in self.coefficients.items() if e > 1]

    @property
    def max_coefficient(self) -> Optional[Fraction]:
        return max(self.coefficients.values(), default=None)


@dataclass(frozen=True)
class RelationCheck:
    first: str
    second: str
    product: Fraction
    expected: Optional[Fraction]

    @property
    def ok(self) -> bool:
        return self.expected is not None and self.product == self.expected


@dataclass(frozen=True)
class RelationReport:
    h_squared: Optional[Fraction]
    checks: Tuple[RelationCheck, ...]

    @property
    def consistent(self) -> bool:
        return self.h_squared is not None and self.h_squared > 0 and all(c.ok for c in self.checks)
