"""Upper bounds on the bilinear complexity of multiplication in F_{q^n}.

All bounds are exact rationals; decimals only appear in :meth:`BoundResult.render`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

P_CHAR = 2
MIN_Q = 16


@dataclass(frozen=True)
class BoundResult:
    q: int
    n: int
    bound: Fraction
    coefficient: Fraction
    formula: str

    def __post_init__(self):
        if self.bound != self.coefficient * self.n:
            raise ValueError("bound must equal coefficient * n")

    def render(self, digits: int = 6) -> str:
        exact = str(self.bound)
        approx = f"{float(self.bound):.{digits}g}"
        return exact if exact == approx else f"{exact} ≈ {approx}"

    def to_record(self) -> dict:
        return {
            "formula": self.formula,
            "q": self.q,
            "n": self.n,
            "bound": str(self.bound),
            "coefficient": str(self.coefficient),
            "approx": float(self.bound),
        }


def _check(q: int, n: int) -> None:
    if q < MIN_Q or q & (q - 1):
        raise ValueError(f"q = {q} must be a power of 2 with q >= {MIN_Q}")
    if n < 1:
        raise ValueError("n must be >= 1")


def _result(q: int, n: int, coefficient: Fraction, formula: str) -> BoundResult:
    return BoundResult(q, n, coefficient * n, coefficient, formula)


def mu_bound_new(q: int, n: int) -> BoundResult:
    """3 (1 + 4/(q - 3)) n, from non-special divisors of degree g - 1 along the tower."""
    _check(q, n)
    return _result(q, n, 3 * (1 + Fraction(4, q - 3)), "new")


def mu_bound_prior(q: int, n: int) -> BoundResult:
    """3 (1 + 4p/(q - 5)) n with p = 2, the earlier bound."""
    _check(q, n)
    return _result(q, n, 3 * (1 + Fraction(4 * P_CHAR, q - 5)), "prior")


def mu_bound_corrected(q: int, n: int) -> BoundResult:
    """3 (1 + 2p/(q - 3)) n with p = 2; the corrected statement of an earlier question."""
    _check(q, n)
    return _result(q, n, 3 * (1 + Fraction(2 * P_CHAR, q - 3)), "corrected")


def all_bounds(q: int, n: int) -> tuple[BoundResult, ...]:
    return mu_bound_new(q, n), mu_bound_prior(q, n), mu_bound_corrected(q, n)
