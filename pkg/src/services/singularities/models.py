from dataclasses import dataclass
from math import gcd
from typing import Tuple

from services.errors import NotCoprime, OutOfRange


@dataclass(frozen=True)
class CyclicQuotientType:
    """
    A cyclic quotient point [m, k] on C.

    When a boundary component of coefficient (d-1)/d passes through the
    point the stored pair is (d*m', d*k') for the underlying coprime
    pair (m', k'). A smooth point carrying such a component is (d, d).
    """
    m: int
    k: int
    d: int = 1

    def __post_init__(self):
        if self.d < 1 or self.m < 1 or self.k < 1:
            raise OutOfRange(f"type [{self.m},{self.k}]_{self.d} needs positive entries")
        if self.k > self.m:
            raise OutOfRange(f"type [{self.m},{self.k}] needs k <= m")
        if self.m % self.d or self.k % self.d:
            raise OutOfRange(f"d={self.d} does not divide [{self.m},{self.k}]")
        m_prime, k_prime = self.underlying
        if gcd(m_prime, k_prime) != 1:
            raise NotCoprime(f"underlying pair ({m_prime},{k_prime}) is not coprime")

    @property
    def underlying(self) -> Tuple[int, int]:
        return self.m // self.d, self.k // self.d

    @property
    def is_smooth(self) -> bool:
        return self.underlying == (1, 1)

    def __str__(self) -> str:
        if self.d == 1:
            return f"[{self.m},{self.k}]"
        return f"[{self.m},{self.k}]_{self.d}"


@dataclass(frozen=True)
class ResolutionChain:
    # C-first orientation: weights[0] is the curve met by C
    weights: Tuple[int, ...]
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w > -2 for w in self.weights):
            raise OutOfRange(f"chain {self.weights} has an entry above -2")
        if self.d < 1:
            raise OutOfRange(f"chain denominator d={self.d} must be positive")

    def __len__(self) -> int:
        return len(self.weights)

    def __str__(self) -> str:
        body = ",".join(str(w) for w in self.weights)
        return f"({body})" if self.d == 1 else f"({body})_{self.d}"
