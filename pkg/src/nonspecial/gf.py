"""Exact arithmetic in F_{p^m} for p in {2, 3} and univariate polynomials over it.

Fields are tiny, so elements are dense coordinate tuples in the power basis
of a deterministically chosen modulus.  Bulk work over whole fields goes
through :mod:`nonspecial.kernels` instead.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels

MAX_DEGREE = {2: 16, 3: 10}
# q**d cap for trial-division enumeration of irreducibles
MAX_ENUMERATION = 4096


class FieldError(ValueError):
    pass


# -- fields and elements ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """F_{p^m} = F_p[w]/(modulus(w)); modulus is low-to-high and monic."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    @cached_property
    def context(self) -> kernels.FieldContext:
        return kernels.FieldContext.build(self.p, self.modulus)

    def __call__(self, value: int | Sequence[int] | FieldElement) -> FieldElement:
        """Build an element from an integer (a prime-field residue) or a coordinate sequence."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, (int(value) % self.p,) + (0,) * (self.m - 1))
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) > self.m:
            raise FieldError(f"too many coordinates for {self!r}")
        return FieldElement(self, coords + (0,) * (self.m - len(coords)))

    def from_code(self, code: int) -> FieldElement:
        coords = []
        for _ in range(self.m):
            code, c = divmod(int(code), self.p)
            coords.append(c)
        return FieldElement(self, tuple(coords))

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    @property
    def gen(self) -> FieldElement:
        """The class of w.  In a prime field (modulus x) this is 0."""
        if self.m == 1:
            return self(-self.modulus[0])
        return self((0, 1))

    def elements(self) -> Iterator[FieldElement]:
        """All elements, lexicographically by coordinates starting at the constant one."""
        for coords in itertools.product(range(self.p), repeat=self.m):
            yield FieldElement(self, coords)

    def prime_field(self) -> FieldSpec:
        return field_make(self.p, 1)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    coords: tuple[int, ...]

    def __repr__(self) -> str:
        if self.field.m == 1:
            return str(self.coords[0])
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(reversed(terms)) or "0"

    @property
    def code(self) -> int:
        out = 0
        for c in reversed(self.coords):
            out = out * self.field.p + c
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field(int(other))
        return NotImplemented

    def __add__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coords))

    def __sub__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> FieldElement:
        return (-self) + other

    def __mul__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.field
        p, m, mod = field.p, field.m, field.modulus
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        for k in range(2 * m - 2, m - 1, -1):
            lead = prod[k] % p
            if lead:
                for j in range(m):
                    prod[k - m + j] -= lead * mod[j]
        return FieldElement(field, tuple(c % p for c in prod[:m]))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in " + repr(self.field))
        return self ** (self.field.order - 2)

    def __truediv__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> FieldElement:
        return self._coerce(other) * self.inverse()


def element_arithmetic(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldError(f"field mismatch: {a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def frobenius_power(a: FieldElement, k: int) -> FieldElement:
    """a ** (p ** k); k is taken modulo m."""
    field = a.field
    return a ** (field.p ** (k % field.m))


def absolute_trace(a: FieldElement) -> int:
    acc, y = a.field.zero, a
    for _ in range(a.field.m):
        acc = acc + y
        y = frobenius_power(y, 1)
    assert not any(acc.coords[1:]), "trace left the prime field"
    return acc.coords[0]


def square_root_char2(a: FieldElement) -> FieldElement:
    if a.field.p != 2:
        raise FieldError("square_root_char2 needs characteristic 2")
    return a ** (2 ** (a.field.m - 1))


class QuadraticCharacter(enum.Enum):
    ZERO = 0
    SQUARE = 1
    NONSQUARE = -1


def quadratic_character(a: FieldElement) -> QuadraticCharacter:
    if a.field.p == 2:
        raise FieldError("quadratic_character needs odd characteristic")
    if a.is_zero():
        return QuadraticCharacter.ZERO
    euler = a ** ((a.field.order - 1) // 2)
    return QuadraticCharacter.SQUARE if euler == a.field.one else QuadraticCharacter.NONSQUARE


# -- polynomials -----------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Polynomial over a FieldSpec; coefficients low-to-high, no trailing zeros."""

    field: FieldSpec
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1].is_zero():
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_ints(cls, field: FieldSpec, values: Iterable) -> UniPoly:
        return cls(field, tuple(field(v) for v in values))

    @classmethod
    def x(cls, field: FieldSpec) -> UniPoly:
        return cls(field, (field.zero, field.one))

    @classmethod
    def const(cls, c: FieldElement) -> UniPoly:
        return cls(c.field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == self.field.one

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = repr(c)
            if not mono:
                terms.append(cs)
            elif c == self.field.one:
                terms.append(mono)
            else:
                terms.append(f"({cs}){mono}" if "+" in cs else f"{cs}{mono}")
        return " + ".join(terms)

    def _check(self, other: UniPoly) -> None:
        if other.field != self.field:
            raise FieldError("polynomials over different fields")

    def __add__(self, other: UniPoly) -> UniPoly:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> UniPoly:
        return UniPoly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other) -> UniPoly:
        if isinstance(other, FieldElement):
            return UniPoly(self.field, tuple(c * other for c in self.coeffs))
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(self.field, ())
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, tuple(out))

    def __pow__(self, e: int) -> UniPoly:
        result = UniPoly.const(self.field.one)
        for _ in range(e):
            result = result * self
        return result

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = other.lead.inverse()
        quot = [self.field.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            factor = c * inv_lead
            quot[k - dq] = factor
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - factor * b
        return UniPoly(self.field, tuple(quot)), UniPoly(self.field, tuple(rem[:dq]))

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[1]

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self * self.lead.inverse()

    def derivative(self) -> UniPoly:
        return UniPoly(self.field, tuple(c * i for i, c in enumerate(self.coeffs))[1:])

    def reversed(self, degree: int | None = None) -> UniPoly:
        """x**degree * self(1/x); degree defaults to deg(self)."""
        d = self.degree if degree is None else degree
        padded = list(self.coeffs) + [self.field.zero] * (d + 1 - len(self.coeffs))
        return UniPoly(self.field, tuple(reversed(padded[: d + 1])))

    def __call__(self, x: FieldElement) -> FieldElement:
        """Evaluate at x, which may lie in an extension of the coefficient field."""
        coeffs = self.coeffs
        if x.field != self.field:
            coeffs = tuple(embed_subfield(c, x.field) for c in coeffs)
        acc = x.field.zero
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def monic_polys(field: FieldSpec, d: int) -> Iterator[UniPoly]:
    """Monic polynomials of degree d, ordered lexicographically from the constant term."""
    elems = list(field.elements())
    for lower in itertools.product(elems, repeat=d):
        yield UniPoly(field, tuple(lower) + (field.one,))


def is_irreducible(poly: UniPoly) -> bool:
    d = poly.degree
    if d <= 0:
        return False
    for e in range(1, d // 2 + 1):
        for f in monic_irreducibles(poly.field, e):
            if (poly % f).is_zero():
                return False
    return True


@lru_cache(maxsize=None)
def _monic_irreducibles(field: FieldSpec, d: int) -> tuple[UniPoly, ...]:
    return tuple(f for f in monic_polys(field, d) if is_irreducible(f))


def monic_irreducibles(field: FieldSpec, d: int) -> list[UniPoly]:
    if d < 1:
        raise ValueError("degree must be >= 1")
    if field.order**d > MAX_ENUMERATION:
        raise FieldError(f"enumerating degree {d} polynomials over {field!r} exceeds the supported range")
    return list(_monic_irreducibles(field, d))


def mobius(n: int) -> int:
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


def irreducible_count(q: int, d: int) -> int:
    """(1/d) * sum_{e | d} mu(d/e) q^e."""
    total = sum(mobius(d // e) * q**e for e in range(1, d + 1) if d % e == 0)
    assert total % d == 0
    return total // d


def factor_by_trial_division(poly: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities (ignores the leading constant)."""
    rest = poly.monic()
    factors = []
    d = 1
    while rest.degree >= 2 * d:
        for f in monic_irreducibles(rest.field, d):
            k = 0
            while True:
                q, r = rest.divmod(f)
                if not r.is_zero():
                    break
                rest, k = q, k + 1
            if k:
                factors.append((f, k))
        d += 1
    if rest.degree >= 1:
        factors.append((rest, 1))
    return factors


# -- field construction and embeddings --------------------------------------


@lru_cache(maxsize=None)
def field_make(p: int, m: int) -> FieldSpec:
    if p not in MAX_DEGREE:
        raise FieldError(f"characteristic {p} is not supported (only 2 and 3)")
    if not 1 <= m <= MAX_DEGREE[p]:
        raise FieldError(f"extension degree {m} outside 1..{MAX_DEGREE[p]} for p = {p}")
    if m == 1:
        return FieldSpec(p, 1, (0, 1))
    for cand in itertools.product(range(p), repeat=m):
        if _prime_irreducible(cand + (1,), p):
            return FieldSpec(p, m, cand + (1,))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# Modulus search works on bare int coefficient tuples over F_p: it runs
# before any FieldSpec exists and must stay fast up to degree 16.


def _prime_rem(a: tuple[int, ...], b: tuple[int, ...], p: int) -> list[int]:
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if c:
            f = c * inv % p
            for j, bj in enumerate(b):
                rem[k - db + j] = (rem[k - db + j] - f * bj) % p
    return rem[:db]


@lru_cache(maxsize=None)
def _prime_irreducibles(p: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        cand + (1,)
        for cand in itertools.product(range(p), repeat=d)
        if _prime_irreducible(cand + (1,), p)
    )


def _prime_irreducible(poly: tuple[int, ...], p: int) -> bool:
    d = len(poly) - 1
    if d >= 2 and poly[0] == 0:
        return False
    for e in range(1, d // 2 + 1):
        for f in _prime_irreducibles(p, e):
            if not any(_prime_rem(poly, f, p)):
                return False
    return True


def field_of_order(q: int) -> FieldSpec:
    for p in MAX_DEGREE:
        m, r = 0, q
        while r % p == 0:
            r //= p
            m += 1
        if r == 1 and m >= 1:
            return field_make(p, m)
    raise FieldError(f"q = {q} is not a supported prime power")


def _sort_key_from_code(codes: np.ndarray, p: int, m: int) -> np.ndarray:
    # lexicographic on (c_0, c_1, ...): reverse the base-p digit order
    key = np.zeros_like(codes)
    rest = codes.copy()
    for _ in range(m):
        key = key * p + rest % p
        rest //= p
    return key


@lru_cache(maxsize=None)
def _embedding_root(source: FieldSpec, target: FieldSpec) -> FieldElement:
    ctx = target.context
    xs = kernels.all_codes(ctx)
    vals = kernels.horner(np.array(source.modulus, dtype=np.int64), xs, ctx)
    roots = xs[vals == 0]
    if roots.size == 0:  # pragma: no cover - impossible when m | n
        raise AssertionError("source modulus has no root in target")
    best = roots[np.argmin(_sort_key_from_code(roots, target.p, target.m))]
    return target.from_code(int(best))


def embed_subfield(a: FieldElement, target: FieldSpec) -> FieldElement:
    source = a.field
    if source == target:
        return a
    if source.p != target.p or target.m % source.m:
        raise FieldError(f"{source!r} does not embed into {target!r}")
    if source.m == 1:
        return target(a.coords[0])
    root = _embedding_root(source, target)
    acc, power = target.zero, target.one
    for c in a.coords:
        if c:
            acc = acc + power * c
        power = power * root
    return acc


def embed_codes(values: Sequence[FieldElement], target: FieldSpec) -> np.ndarray:
    return np.array([embed_subfield(v, target).code for v in values], dtype=np.int64)


def find_root(poly: UniPoly, target: FieldSpec) -> FieldElement:
    """Smallest root (coordinate order) of ``poly`` in ``target``, found by exhaustive evaluation."""
    ctx = target.context
    xs = kernels.all_codes(ctx)
    vals = kernels.horner(embed_codes(poly.coeffs, target), xs, ctx)
    roots = xs[vals == 0]
    if roots.size == 0:
        raise FieldError(f"{poly!r} has no root in {target!r}")
    return target.from_code(int(roots[np.argmin(_sort_key_from_code(roots, target.p, target.m))]))
