"""Zeta-function invariants of a function field from its place counts.

Everything here is exact: Python integers, ``fractions.Fraction`` and the
quadratic ring Z[sqrt d] (:class:`SqrtInt`).  The only floating point is the
optional root-modulus diagnostic in :func:`admissibility`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .gf import mobius

MAX_Q = 64


class InadmissibleError(ValueError):
    """The data cannot come from a function field (or violates a structural identity)."""


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def squarefree_decomposition(q: int) -> tuple[int, int]:
    """(s, d) with q = s^2 d and d squarefree."""
    s, d = 1, q
    k = 2
    while k * k <= d:
        while d % (k * k) == 0:
            d //= k * k
            s *= k
        k += 1
    return s, d


# -- domain types ---------------------------------------------------------------


@dataclass(frozen=True)
class PlaceCounts:
    q: int
    g: int
    N: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "N", tuple(int(n) for n in self.N))
        if not (is_prime_power(self.q) and self.q <= MAX_Q):
            raise ValueError(f"q = {self.q} must be a prime power in 2..{MAX_Q}")
        if self.g < 1:
            raise ValueError("genus must be >= 1")
        if len(self.N) != self.g:
            raise ValueError(f"expected {self.g} place counts, got {len(self.N)}")
        if any(n < 0 for n in self.N):
            raise ValueError("place counts must be nonnegative")

    @property
    def hasse_weil_ok(self) -> bool:
        return (self.N[0] - (self.q + 1)) ** 2 <= 4 * self.g**2 * self.q

    def to_record(self) -> dict:
        return {"q": self.q, "g": self.g, "N": list(self.N)}

    @classmethod
    def from_record(cls, record: dict) -> PlaceCounts:
        try:
            return cls(int(record["q"]), int(record["g"]), tuple(record["N"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed place-count record: {exc}") from exc


@dataclass(frozen=True)
class LPolynomial:
    q: int
    g: int
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(c) for c in self.a))
        if len(self.a) != 2 * self.g + 1:
            raise ValueError(f"expected {2 * self.g + 1} coefficients, got {len(self.a)}")
        if self.a[0] != 1:
            raise ValueError("a_0 must be 1")
        for j in range(self.g + 1):
            if self.a[2 * self.g - j] != self.q ** (self.g - j) * self.a[j]:
                raise ValueError(f"functional equation fails at a_{2 * self.g - j}")

    def coeff(self, i: int) -> int:
        return self.a[i] if 0 <= i <= 2 * self.g else 0

    @cached_property
    def h(self) -> int:
        return sum(self.a)

    @cached_property
    def power_sums(self) -> tuple[int, ...]:
        return power_sums_from_lpoly(self, 2 * self.g)

    def __call__(self, t):
        return sum(c * t**i for i, c in enumerate(self.a))

    def to_record(self) -> dict:
        return {"q": self.q, "g": self.g, "a": list(self.a)}

    @classmethod
    def from_record(cls, record: dict) -> LPolynomial:
        try:
            return cls(int(record["q"]), int(record["g"]), tuple(record["a"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed L-polynomial record: {exc}") from exc

    def __str__(self) -> str:
        return _format_poly(self.a, "t", ascending=True)


@dataclass(frozen=True)
class RealWeilPoly:
    """Monic integer polynomial, coefficients stored low-to-high."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError("real Weil polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        return _format_poly(self.coeffs, "T", ascending=False)


def _format_poly(coeffs: Sequence[int], var: str, ascending: bool) -> str:
    order = range(len(coeffs)) if ascending else range(len(coeffs) - 1, -1, -1)
    out = []
    for i in order:
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out) or "0"


@dataclass(frozen=True)
class SqrtInt:
    """u + v*sqrt(d) with d squarefree (d == 1 means a plain integer)."""

    u: int
    v: int = 0
    d: int = 1

    def __post_init__(self):
        if self.d == 1 and self.v:
            object.__setattr__(self, "u", self.u + self.v)
            object.__setattr__(self, "v", 0)

    def _lift(self, other) -> SqrtInt:
        if isinstance(other, SqrtInt):
            if other.d != self.d and other.v and self.v:
                raise ValueError("mixing different quadratic rings")
            return other
        return SqrtInt(int(other), 0, self.d)

    def _ctx(self, other: SqrtInt) -> int:
        return self.d if self.v or self.d != 1 else other.d

    def __add__(self, other) -> SqrtInt:
        o = self._lift(other)
        return SqrtInt(self.u + o.u, self.v + o.v, self._ctx(o))

    __radd__ = __add__

    def __neg__(self) -> SqrtInt:
        return SqrtInt(-self.u, -self.v, self.d)

    def __sub__(self, other) -> SqrtInt:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> SqrtInt:
        return (-self) + other

    def __mul__(self, other) -> SqrtInt:
        o = self._lift(other)
        d = self._ctx(o)
        return SqrtInt(self.u * o.u + self.v * o.v * d, self.u * o.v + self.v * o.u, d)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> SqrtInt:
        out = SqrtInt(1, 0, self.d)
        for _ in range(e):
            out = out * self
        return out

    def sign(self) -> int:
        u, v, d = self.u, self.v, self.d
        if v == 0:
            return (u > 0) - (u < 0)
        if u >= 0 and v >= 0:
            return 1
        if u <= 0 and v <= 0:
            return -1
        if u > 0:  # v < 0
            return (u * u > v * v * d) - (u * u < v * v * d)
        return (v * v * d > u * u) - (v * v * d < u * u)

    def __float__(self) -> float:
        return self.u + self.v * math.sqrt(self.d)

    def __str__(self) -> str:
        if self.v == 0:
            return str(self.u)
        root = f"√{self.d}"
        mag = abs(self.v)
        tail = root if mag == 1 else f"{mag}{root}"
        if self.u == 0:
            return ("-" if self.v < 0 else "") + tail
        return f"{self.u} {'-' if self.v < 0 else '+'} {tail}"


def sqrt_of(q: int) -> SqrtInt:
    """sqrt(q) as an element of Z[sqrt d]."""
    s, d = squarefree_decomposition(q)
    return SqrtInt(0, s, d) if d != 1 else SqrtInt(s)


# -- counts <-> L-polynomial -------------------------------------------------------


def _divisor_sum(N: Sequence[int], k: int) -> int:
    return sum(d * N[d - 1] for d in range(1, k + 1) if k % d == 0)


def power_sums_from_counts(pc: PlaceCounts) -> tuple[int, ...]:
    """S_k = q^k + 1 - sum_{d | k} d N_d for k = 1..g."""
    return tuple(pc.q**k + 1 - _divisor_sum(pc.N, k) for k in range(1, pc.g + 1))


def lpoly_from_counts(pc: PlaceCounts) -> LPolynomial:
    q, g = pc.q, pc.g
    S = power_sums_from_counts(pc)
    a = [1]
    for i in range(1, g + 1):
        total = -sum(S[k - 1] * a[i - k] for k in range(1, i + 1))
        if total % i:  # pragma: no cover - integral for integer S
            raise InadmissibleError(f"non-integral a_{i}")
        a.append(total // i)
    for i in range(g + 1, 2 * g + 1):
        a.append(q ** (i - g) * a[2 * g - i])
    L = LPolynomial(q, g, tuple(a))
    if L.h <= 0:
        raise InadmissibleError(f"class number L(1) = {L.h} is not positive")
    return L


def power_sums_from_lpoly(L: LPolynomial, k: int) -> tuple[int, ...]:
    S: list[int] = []
    for n in range(1, k + 1):
        S.append(-(n * L.coeff(n) + sum(S[i - 1] * L.coeff(n - i) for i in range(1, n))))
    return tuple(S)


def point_counts_from_lpoly(L: LPolynomial, k: int) -> tuple[int, ...]:
    """Rational points over F_{q^n}, n = 1..k."""
    return tuple(L.q**n + 1 - s for n, s in enumerate(power_sums_from_lpoly(L, k), start=1))


def counts_from_lpoly(L: LPolynomial, k: int) -> tuple[int, ...]:
    if k < 1:
        raise ValueError("k must be >= 1")
    P = point_counts_from_lpoly(L, k)
    N = []
    for n in range(1, k + 1):
        total = sum(mobius(n // d) * P[d - 1] for d in range(1, n + 1) if n % d == 0)
        if total % n:
            raise InadmissibleError(f"N_{n} = {Fraction(total, n)} is not an integer")
        if total < 0:
            raise InadmissibleError(f"N_{n} = {total // n} is negative")
        N.append(total // n)
    return tuple(N)


def class_number(L: LPolynomial) -> int:
    return L.h


# -- effective divisors ----------------------------------------------------------------


def effective_count(L: LPolynomial, m: int) -> int:
    """A_m from the numerator: sum_{i<=m} (q^{m-i+1} - 1)/(q - 1) a_i."""
    if m < 0:
        raise ValueError("m must be >= 0")
    q = L.q
    total = sum((q ** (m - i + 1) - 1) // (q - 1) * L.coeff(i) for i in range(m + 1))
    if total < 0:
        raise InadmissibleError(f"A_{m} = {total} is negative")
    return total


def effective_count_euler(N: Sequence[int], m: int) -> int:
    """[t^m] prod_d (1 - t^d)^(-N_d), expanded as an exact power series."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if any(n < 0 for n in N):
        raise ValueError("place counts must be nonnegative")
    series = [1] + [0] * m
    for d in range(1, min(m, len(N)) + 1):
        n = N[d - 1]
        if n == 0:
            continue
        factor = [0] * (m + 1)
        for j in range(m // d + 1):
            factor[d * j] = math.comb(n + j - 1, j)
        series = [sum(series[i] * factor[k - i] for i in range(k + 1)) for k in range(m + 1)]
    return series[m]


def a_gminus1_closed(L: LPolynomial) -> int:
    """A_{g-1} = (h - (a_g + 2 sum_{i<g} a_i)) / (q - 1)."""
    q, g = L.q, L.g
    num = L.h - (L.a[g] + 2 * sum(L.a[:g]))
    if num % (q - 1):
        raise InadmissibleError("closed form for A_{g-1} is not integral")
    return num // (q - 1)


# -- real Weil polynomial -------------------------------------------------------------


def real_weil(L: LPolynomial) -> RealWeilPoly:
    """Real Weil polynomial: L(t) = t^g H(1/t + q t).

    Its roots are 2 sqrt(q) cos(theta_j), so the T^(g-1) coefficient is a_1.
    """
    q, g = L.q, L.g
    rem = {k: L.a[g + k] for k in range(-g, g + 1)}
    b = [0] * (g + 1)
    for j in range(g, -1, -1):
        bj = rem.get(-j, 0)
        b[j] = bj
        if bj:
            for i in range(j + 1):
                rem[2 * i - j] -= bj * math.comb(j, i) * q**i
    if any(rem.values()):
        raise InadmissibleError("L(t)/t^g is not a polynomial in 1/t + qt")
    return RealWeilPoly(tuple(b))


def real_weil_quartic(L: LPolynomial) -> RealWeilPoly:
    """Closed form for genus 4."""
    if L.g != 4:
        raise ValueError("closed form is for genus 4")
    q, a = L.q, L.a
    return RealWeilPoly(
        (a[4] - 2 * q * a[2] + 2 * q * q, a[3] - 3 * q * a[1], a[2] - 4 * q, a[1], 1)
    )


def lpoly_from_real_weil(H: RealWeilPoly, q: int) -> LPolynomial:
    """Inverse of :func:`real_weil`."""
    g = H.degree
    a = [0] * (2 * g + 1)
    for j, bj in enumerate(H.coeffs):
        if bj:
            for i in range(j + 1):
                a[g + 2 * i - j] += bj * math.comb(j, i) * q**i
    return LPolynomial(q, g, tuple(a))


def sqrt_sign_eval(H: RealWeilPoly, q: int, negate: bool = False) -> tuple[SqrtInt, int]:
    """Exact H(2 sqrt q) (or H(-2 sqrt q)) and its sign."""
    point = sqrt_of(q) * (-2 if negate else 2)
    value = SqrtInt(0, 0, point.d)
    for c in reversed(H.coeffs):
        value = value * point + c
    return value, value.sign()


# -- admissibility ----------------------------------------------------------------------


@dataclass
class AdmissibilityReport:
    admissible: bool
    violations: list[str] = field(default_factory=list)
    details: dict[str, str] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)


def _effective_bound_margin(L: LPolynomial, A: Sequence[int]) -> SqrtInt:
    """h - (sqrt q - 1)^2 (2 sum_{n<=g-2} sqrt(q)^{g-1-n} A_n + A_{g-1}); must be >= 0."""
    g = L.g
    r = sqrt_of(L.q)
    lhs = SqrtInt(A[g - 1], 0, r.d)
    for n in range(g - 1):
        lhs = lhs + 2 * A[n] * r ** (g - 1 - n)
    return SqrtInt(L.h, 0, r.d) - (r - 1) ** 2 * lhs


def root_modulus_deviation(L: LPolynomial) -> float:
    """max | |root| - q^{-1/2} | over the roots of L (floating point)."""
    roots = np.roots(np.array(L.a[::-1], dtype=float))
    return float(np.max(np.abs(np.abs(roots) - L.q**-0.5)))


def admissibility(pc: PlaceCounts, root_tolerance: float = 1e-6) -> AdmissibilityReport:
    """Screen (q, g, N) against the exact necessary conditions for a function field."""
    rep = AdmissibilityReport(True)

    def fail(code: str, detail: str) -> None:
        rep.admissible = False
        rep.violations.append(code)
        rep.details[code] = detail

    if not pc.hasse_weil_ok:
        fail("hasse-weil", f"(N_1 - (q+1))^2 = {(pc.N[0] - pc.q - 1) ** 2} > 4g^2q = {4 * pc.g**2 * pc.q}")
    try:
        L = lpoly_from_counts(pc)
    except InadmissibleError as exc:
        fail("class-number", str(exc))
        return rep

    try:
        counts_from_lpoly(L, 2 * pc.g)
    except InadmissibleError as exc:
        fail("place-counts", str(exc))

    H = real_weil(L)
    upper, s_up = sqrt_sign_eval(H, pc.q)
    if s_up < 0:
        fail("real-weil-upper", f"H(2√q) = {upper} < 0")
    lower, s_low = sqrt_sign_eval(H, pc.q, negate=True)
    if s_low * (-1) ** pc.g < 0:
        fail("real-weil-lower", f"(-1)^g H(-2√q) < 0 with H(-2√q) = {lower}")

    try:
        A = [effective_count(L, n) for n in range(pc.g)]
    except InadmissibleError as exc:
        fail("effective-counts", str(exc))
    else:
        margin = _effective_bound_margin(L, A)
        if margin.sign() < 0:
            fail("effective-bound", f"h - (√q-1)^2·(weighted A-sum) = {margin} < 0")

    dev = root_modulus_deviation(L)
    if dev > root_tolerance:
        rep.diagnostics.append(f"numeric root modulus deviates from q^(-1/2) by {dev:.3g}")
    return rep


# -- random instances for property suites --------------------------------------------------


def _random_real_weil_factor(rng: random.Random, q: int, budget: int) -> RealWeilPoly:
    bound = math.isqrt(4 * q)  # integer roots k need k^2 <= 4q
    if budget == 1 or rng.random() < 0.4:
        return RealWeilPoly((-rng.randint(-bound, bound), 1))
    while True:
        b = rng.randint(-2 * bound - 1, 2 * bound + 1)
        c = rng.randint(-4 * q, 4 * q)
        H = RealWeilPoly((c, b, 1))
        if b * b - 4 * c < 0 or b * b > 16 * q:
            continue
        if sqrt_sign_eval(H, q)[1] >= 0 and sqrt_sign_eval(H, q, negate=True)[1] >= 0:
            return H


def int_poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def random_admissible(rng: random.Random, q: int, g: int, max_tries: int = 10_000) -> tuple[PlaceCounts, LPolynomial]:
    """A Weil-type L-polynomial with nonnegative N_1..N_{2g}, drawn by rejection.

    Roots of H are integers or conjugate pairs inside [-2 sqrt q, 2 sqrt q],
    so every exact necessary condition holds by construction.
    """
    for _ in range(max_tries):
        coeffs: tuple[int, ...] = (1,)
        while len(coeffs) - 1 < g:
            factor = _random_real_weil_factor(rng, q, g - (len(coeffs) - 1))
            coeffs = int_poly_mul(coeffs, factor.coeffs)
        L = lpoly_from_real_weil(RealWeilPoly(coeffs), q)
        try:
            N = counts_from_lpoly(L, 2 * g)
        except InadmissibleError:
            continue
        return PlaceCounts(q, g, N[:g]), L
    raise RuntimeError(f"no admissible instance found for q={q}, g={g}")
