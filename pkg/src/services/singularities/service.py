"""
Singularity arithmetic

Hirzebruch-Jung chains of cyclic quotient points, minimal log discrepancies
along C and the 1/7-log terminal threshold.
"""
from fractions import Fraction
from math import ceil, gcd
from typing import Set, Tuple

from services.errors import NotCoprime, NotLogTerminal, OutOfRange
from . import schemas
from .models import CyclicQuotientType, ResolutionChain

ONE_SEVENTH_K_BOUND = 7


def hj_expand(m: int, k: int) -> ResolutionChain:
    """
    Expand m/(m-k) = w1 - 1/(w2 - 1/(...)) into the chain (-w1, ..., -wr).

    The smooth pair (1, 1) gives the empty chain; any other k = m only
    occurs through d-scaling (see resolution_of).
    """
    if m < 1 or k < 1 or k > m:
        raise OutOfRange(f"hj_expand needs 1 <= k <= m, got ({m},{k})")
    if gcd(m, k) != 1:
        raise NotCoprime(f"({m},{k}) is not coprime")
    if m == k:
        return ResolutionChain(())
    weights = []
    p, q = m, m - k
    while q > 0:
        w = ceil(Fraction(p, q))
        weights.append(-w)
        p, q = q, w * q - p
    return ResolutionChain(tuple(weights))


def hj_contract(chain: ResolutionChain) -> Tuple[int, int]:
    """Evaluate the chain back to (m, k), scaled by the chain's d."""
    if not chain.weights:
        return chain.d, chain.d
    value = Fraction(-chain.weights[-1])
    for w in reversed(chain.weights[:-1]):
        value = -w - 1 / value
    m, q = value.numerator, value.denominator
    return chain.d * m, chain.d * (m - q)


def resolution_of(t: CyclicQuotientType) -> ResolutionChain:
    m_prime, k_prime = t.underlying
    return ResolutionChain(hj_expand(m_prime, k_prime).weights, d=t.d)


def type_of(chain: ResolutionChain) -> CyclicQuotientType:
    m, k = hj_contract(chain)
    return CyclicQuotientType(m, k, chain.d)


def reversed_type(m: int, k: int) -> Tuple[int, int]:
    """Reading the chain from the other end: (m, k) -> (m, k^-1 mod m)."""
    if gcd(m, k) != 1:
        raise NotCoprime(f"({m},{k}) is not coprime")
    if m == 1:
        return 1, 1
    return m, pow(k, -1, m)


def reverse_chain(chain: ResolutionChain) -> ResolutionChain:
    return ResolutionChain(tuple(reversed(chain.weights)), d=chain.d)


def _check_b(b: Fraction):
    if b < 0 or b > 1:
        raise OutOfRange(f"coefficient of C must lie in [0, 1], got {b}")


def mld(t: CyclicQuotientType, b: Fraction) -> Fraction:
    """a(E1) = (1 + (m - k)(1 - b)) / m for the curve E1 met by C."""
    b = Fraction(b)
    _check_b(b)
    return (1 + (t.m - t.k) * (1 - b)) / Fraction(t.m)


def co_discrepancy(t: CyclicQuotientType, b: Fraction) -> Fraction:
    return 1 - mld(t, b)


def is_one_seventh_lt(t: CyclicQuotientType) -> bool:
    return t.k < ONE_SEVENTH_K_BOUND


def series_of(t: CyclicQuotientType) -> Tuple[int, int]:
    if not is_one_seventh_lt(t):
        raise NotLogTerminal(f"{t} has k >= 7 and is not 1/7-log terminal")
    return t.m % t.k, t.k


def one_seventh_lt_series(max_m: int = 60) -> Set[Tuple[int, int]]:
    """All series (m mod k, k) met by d-scaled types with k < 7 and m <= max_m."""
    series = set()
    for k in range(1, ONE_SEVENTH_K_BOUND):
        for d in (d for d in range(1, k + 1) if k % d == 0):
            k_prime = k // d
            for m_prime in range(k_prime, max_m // d + 1):
                if gcd(m_prime, k_prime) != 1:
                    continue
                series.add(series_of(CyclicQuotientType(d * m_prime, k, d)))
    return series


def singularity_report(t: CyclicQuotientType, b: Fraction):
    lt = is_one_seventh_lt(t)
    return schemas.SingularityReport(
        m=t.m,
        k=t.k,
        d=t.d,
        chain=list(resolution_of(t).weights),
        b=Fraction(b),
        mld=mld(t, b),
        co_discrepancy=co_discrepancy(t, b),
        one_seventh_lt=lt,
        series=series_of(t) if lt else None,
    )
