"""Sufficient conditions for non-special divisors of degree g and g - 1.

Two properties are decided from counting data alone:

* ``Eg``: the field has an effective non-special divisor of degree g;
* ``Egm1``: the field has a non-special divisor of degree g - 1.

Every rule below is a proven sufficient condition.  Fields known to fail a
property are recognised by their fingerprint (q, g, N_1..N_g, h); a match
means "matches a listed exception", not an isomorphism certificate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .zeta import (
    LPolynomial,
    PlaceCounts,
    effective_count,
    int_poly_mul,
    is_prime_power,
    lpoly_from_counts,
)


class Property(str, enum.Enum):
    EG = "Eg"
    EGM1 = "Egm1"


class Status(str, enum.Enum):
    GUARANTEED = "Guaranteed"
    EXCEPTION_LISTED = "ExceptionListed"
    UNDETERMINED = "Undetermined"


RULES: dict[str, str] = {
    "R1": "g = 1: every divisor of degree > 2g - 2 is non-special",
    "R2": "N_1 >= g: some effective divisor of degree g built from rational places is non-special",
    "R3": "A_{g-2} < h implies an effective non-special divisor of degree g",
    "R4": "N_2 >= q + 2 forces A_g > (q + 1) A_{g-2}",
    "R5": "N_2 = q + 1 and N_d >= 1 for some d != 2 dividing g forces A_g > (q + 1) A_{g-2}",
    "R6": "q >= 3: A_{g-2} >= h contradicts the weighted bound on A_0..A_{g-1}",
    "R7": "q = 2 and g in {3, 4}: every field of these genera has the property",
    "R8": "q = 2, g >= 5, N_1 >= 2: N_1^2 A_{g-2} <= A_g <= 3 A_{g-2} is impossible",
    "S1": "g = 1 and h >= 2: some degree-zero class is not principal",
    "S2": "A_{g-1} = 0: every divisor of degree g - 1 is non-special",
    "S3": "A_{g-1} < h: some class of degree g - 1 has no effective member",
    "S4": "N_1 >= g + 1: removing a rational place from a non-special divisor of degree g",
    "S5": "q >= 4, g >= 2: the weighted bound gives A_{g-1} < h",
    "S6": "q in {2, 3}, g >= 3, N_1 >= q + 1: N_1 A_{g-1} <= A_g < (q + 1) h",
    "S7": "a_g + 2 sum_{i<g} a_i >= 0 (> 0 when q = 2) gives A_{g-1} < h",
    "S8": "L(t) = (1 + q t^2)^g satisfies the coefficient-sum rule",
    "T0": "g = 0: every divisor of nonnegative degree is non-special",
}


@dataclass(frozen=True)
class ExceptionRecord:
    q: int
    g: int
    N: tuple[int, ...]
    h: int
    equation: str
    source: str
    failed: Property

    @property
    def fingerprint(self) -> tuple[int, int, tuple[int, ...], int]:
        return (self.q, self.g, self.N, self.h)

    def to_record(self) -> dict:
        return {
            "q": self.q,
            "g": self.g,
            "N": list(self.N),
            "h": self.h,
            "equation": self.equation,
            "source": self.source,
            "failed_property": self.failed.value,
        }


def _rec(q, g, N, h, equation, source, failed) -> ExceptionRecord:
    return ExceptionRecord(q, g, tuple(N), h, equation, source, failed)


_E, _E1 = Property.EG, Property.EGM1

EXCEPTIONS: tuple[ExceptionRecord, ...] = (
    _rec(2, 1, (1,), 1, "y^2 + y + (x^3 + x + 1) = 0", "genus1", _E1),
    _rec(3, 1, (1,), 1, "y^2 - (x^3 + 2x + 2) = 0", "genus1", _E1),
    _rec(4, 1, (1,), 1, "y^2 + y + (x^3 + a) = 0, F_4 = F_2(a)", "genus1", _E1),
    _rec(2, 2, (1, 2), 1, "y^2 + y + (x^5 + x^3 + 1) = 0", "genus2-eg", _E),
    _rec(2, 2, (0, 3), 1, "y^2 + y + (x^3 + x^2 + 1)/(x^3 + x + 1) = 0", "genus2-eg", _E),
    _rec(2, 2, (1, 2), 1, "y^2 + y = x^5 + x^3 + 1", "genus2-egm1", _E1),
    _rec(2, 2, (2, 1), 2, "y^2 + y = (x^4 + x + 1)/x", "genus2-egm1", _E1),
    _rec(2, 3, (0, 1, 1), 1, "y^4 + xy^3 + (x + 1)y + (x^4 + x + 1) = 0", "genus3-egm1", _E1),
    _rec(2, 3, (0, 4, 2), 2, "y^2 + y + (x^6 + x + 1)/(x^2 + x + 1)^3 = 0", "genus3-egm1", _E1),
    _rec(2, 3, (0, 2, 2), 2, "y^4 + xy^3 + (x + 1)y + (x^4 + x^2 + 1) = 0", "genus3-egm1", _E1),
    _rec(2, 3, (1, 1, 2), 2, "y^3 + y + (x^4 + x^3 + 1) = 0", "genus3-egm1", _E1),
    _rec(2, 3, (1, 2, 2), 3, "y^3 + x^2y^2 + (x^3 + 1)y + (x^4 + x^3 + 1) = 0", "genus3-egm1", _E1),
    _rec(2, 3, (2, 0, 3), 3, "y^3 + x^2y + (x^4 + x^3 + x) = 0", "genus3-egm1", _E1),
    _rec(2, 3, (1, 3, 2), 4, "y^3 + (x^2 + x + 1)y + (x^4 + x + 1) = 0", "genus3-egm1", _E1),
)


def lookup_exception(q: int, g: int, N, h: int) -> tuple[ExceptionRecord, ...]:
    """All listed exceptions with fingerprint (q, g, N, h); usually zero or one."""
    key = (q, g, tuple(N), h)
    return tuple(r for r in EXCEPTIONS if r.fingerprint == key)


@dataclass(frozen=True)
class FieldData:
    """Place counts plus everything the rules need, recomputed from them."""

    counts: PlaceCounts

    @classmethod
    def from_counts(cls, q: int, g: int, N) -> FieldData:
        return cls(PlaceCounts(q, g, tuple(N)))

    @property
    def q(self) -> int:
        return self.counts.q

    @property
    def g(self) -> int:
        return self.counts.g

    @property
    def N(self) -> tuple[int, ...]:
        return self.counts.N

    @cached_property
    def L(self) -> LPolynomial:
        return lpoly_from_counts(self.counts)

    @property
    def h(self) -> int:
        return self.L.h

    @cached_property
    def A(self) -> tuple[int, ...]:
        """A_0..A_g."""
        return tuple(effective_count(self.L, m) for m in range(self.g + 1))


@dataclass(frozen=True)
class Verdict:
    property: Property
    status: Status
    rules: tuple[str, ...] = ()
    exceptions: tuple[ExceptionRecord, ...] = ()
    diagnostics: tuple[str, ...] = ()

    def __post_init__(self):
        if self.status is Status.GUARANTEED and not self.rules:
            raise ValueError("a guaranteed verdict needs a rule")
        if self.status is Status.EXCEPTION_LISTED and not self.exceptions:
            raise ValueError("an exception verdict needs a matching record")

    @property
    def exception(self) -> ExceptionRecord | None:
        return self.exceptions[0] if self.exceptions else None

    def to_record(self) -> dict:
        return {
            "property": self.property.value,
            "status": self.status.value,
            "rules": [{"id": r, "cite": RULES[r]} for r in self.rules],
            "exception": self.exception.to_record() if self.exception else None,
            "diagnostics": list(self.diagnostics),
        }

    def summary(self) -> str:
        out = f"{self.property.value}: {self.status.value}"
        if self.rules:
            out += " via " + ", ".join(self.rules)
        if self.exception:
            out += f" (matches listed exception: {self.exception.equation})"
        return out


def _decide(prop: Property, fd: FieldData, fired: list[str]) -> Verdict:
    matches = tuple(r for r in lookup_exception(fd.q, fd.g, fd.N, fd.h) if r.failed is prop)
    if matches:
        diag = ()
        if fired:
            diag = (f"consistency alarm: rules {', '.join(fired)} fire on a listed exception",)
        return Verdict(prop, Status.EXCEPTION_LISTED, tuple(fired), matches, diag)
    if fired:
        return Verdict(prop, Status.GUARANTEED, tuple(fired))
    return Verdict(prop, Status.UNDETERMINED)


def evaluate_Eg(fd: FieldData) -> Verdict:
    q, g, N, h = fd.q, fd.g, fd.N, fd.h
    fired = []
    if g == 1:
        fired.append("R1")
    if N[0] >= g:
        fired.append("R2")
    if g >= 2:
        if fd.A[g - 2] < h:
            fired.append("R3")
        if N[1] >= q + 2:
            fired.append("R4")
        if N[1] == q + 1 and any(N[d - 1] >= 1 for d in range(1, g + 1) if d != 2 and g % d == 0):
            fired.append("R5")
        if q >= 3:
            fired.append("R6")
        if q == 2 and g in (3, 4):
            fired.append("R7")
        if q == 2 and g >= 5 and N[0] >= 2:
            fired.append("R8")
    return _decide(Property.EG, fd, fired)


def _is_maximal_restriction(L: LPolynomial) -> bool:
    target: tuple[int, ...] = (1,)
    for _ in range(L.g):
        target = int_poly_mul(target, (1, 0, L.q))
    return L.a == target


def evaluate_Egm1(fd: FieldData) -> Verdict:
    q, g, N, h, L = fd.q, fd.g, fd.N, fd.h, fd.L
    fired = []
    if g == 1 and h >= 2:
        fired.append("S1")
    if g > 1 and fd.A[g - 1] == 0:
        fired.append("S2")
    if fd.A[g - 1] < h:
        fired.append("S3")
    if N[0] >= g + 1:
        fired.append("S4")
    if q >= 4 and g >= 2:
        fired.append("S5")
    if q in (2, 3) and g >= 3 and N[0] >= q + 1:
        fired.append("S6")
    coeff_sum = L.a[g] + 2 * sum(L.a[:g])
    if coeff_sum > 0 or (coeff_sum == 0 and q >= 3):
        fired.append("S7")
    if _is_maximal_restriction(L):
        fired.append("S8")
    return _decide(Property.EGM1, fd, fired)


def evaluate(fd: FieldData, prop: Property) -> Verdict:
    return evaluate_Eg(fd) if prop is Property.EG else evaluate_Egm1(fd)


def certify_tower_step(q: int, g: int, n1: int) -> Verdict:
    """Egm1 for a tower step known only through (q, g, N_1), q a power of two."""
    if not (is_prime_power(q) and q & (q - 1) == 0):
        raise ValueError(f"q = {q} is not a power of 2")
    if g < 0 or n1 < 0:
        raise ValueError("g and N_1 must be nonnegative")
    prop = Property.EGM1
    if g == 0:
        return Verdict(prop, Status.GUARANTEED, ("T0",))
    if g == 1:
        # for an elliptic field h = N_1, so the fingerprint is complete
        if n1 >= 2:
            return Verdict(prop, Status.GUARANTEED, ("S1",))
        matches = lookup_exception(q, 1, (n1,), n1)
        if matches:
            return Verdict(prop, Status.EXCEPTION_LISTED, (), matches)
        return Verdict(prop, Status.UNDETERMINED)
    if q >= 4:
        return Verdict(prop, Status.GUARANTEED, ("S5",))
    if n1 >= 3:
        return Verdict(prop, Status.GUARANTEED, ("S6",) if g >= 3 else ("S4",))
    return Verdict(prop, Status.UNDETERMINED)
