from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from services.rationals import Rational


class SingularityReport(BaseModel):
    m: int
    k: int
    d: int = 1
    chain: List[int]
    b: Rational
    mld: Rational
    co_discrepancy: Rational
    one_seventh_lt: bool
    series: Optional[Tuple[int, int]] = None

    model_config = ConfigDict(from_attributes=True)


class ChainReport(BaseModel):
    chain: List[int]
    m: int
    k: int
    reversed_k: int
