from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple


@dataclass(frozen=True)
class ComplementReport:
    integral: bool
    degree: Fraction
    log_canonical: bool
    dominates_bump: bool
    failures: Tuple[str, ...] = ()
    # intersection numbers only; linear equivalence is not decidable from the graph
    equivalence: str = "numerical"

    @property
    def numerically_trivial(self) -> bool:
        return self.degree == 0

    @property
    def ok(self) -> bool:
        return self.integral and self.numerically_trivial and self.log_canonical and self.dominates_bump


@dataclass(frozen=True)
class ComplementCertificate:
    n: int
    plus_coefficients: Dict[str, Fraction] = field(default_factory=dict)
    report: Optional[ComplementReport] = None

    def coefficient(self, vertex_id: str) -> Fraction:
        return self.plus_coefficients.get(vertex_id, Fraction(0))
