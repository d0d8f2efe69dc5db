"""Degree-2 covers of the rational function field F_q(x).

Characteristic 2 covers are Artin-Schreier curves ``y^2 + y = f``; odd
characteristic covers are Kummer curves ``y^2 = f``.  Each place P of F_q(x)
splits, stays inert or ramifies in the cover, which is all that is needed to
count places by degree and to get the genus from Riemann-Hurwitz.

Local work happens in the residue field F_{q^deg P}, realised as the
absolute field F_{p^(m deg P)} together with a fixed root of P.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import kernels
from .gf import (
    FieldElement,
    FieldError,
    FieldSpec,
    MAX_DEGREE,
    QuadraticCharacter,
    UniPoly,
    absolute_trace,
    embed_codes,
    embed_subfield,
    factor_by_trial_division,
    field_make,
    field_of_order,
    find_root,
    is_irreducible,
    monic_irreducibles,
    poly_gcd,
    quadratic_character,
    square_root_char2,
)

MAX_COUNT_DEGREE = 8


class DegenerateCoverError(ValueError):
    """The equation does not define a genus >= 0 double cover with constant field F_q."""


class CoverKind(enum.Enum):
    ARTIN_SCHREIER = "artin-schreier"
    KUMMER = "kummer"


class SplittingType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class RationalFunction:
    num: UniPoly
    den: UniPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(self.num, self.den)
        num, den = self.num, self.den
        if g.degree > 0:
            num, den = num // g, den // g
        scale = den.lead.inverse()
        object.__setattr__(self, "num", num * scale)
        object.__setattr__(self, "den", den * scale)

    @classmethod
    def from_ints(cls, field: FieldSpec, num: Sequence, den: Sequence = (1,)) -> RationalFunction:
        return cls(UniPoly.from_ints(field, num), UniPoly.from_ints(field, den))

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def at_infinity(self) -> RationalFunction:
        """f(1/x), so that the place at infinity becomes the place x."""
        shift = self.den.degree - self.num.degree
        num, den = self.num.reversed(), self.den.reversed()
        x = UniPoly.x(self.field)
        if shift >= 0:
            num = num * x**shift
        else:
            den = den * x ** (-shift)
        return RationalFunction(num, den)

    def __repr__(self) -> str:
        if self.den.degree == 0:
            return f"{self.num!r}"
        return f"({self.num!r})/({self.den!r})"


@dataclass(frozen=True)
class BasePlace:
    """A place of F_q(x): a monic irreducible polynomial, or infinity (poly None)."""

    field: FieldSpec
    poly: UniPoly | None = None

    @classmethod
    def infinity(cls, field: FieldSpec) -> BasePlace:
        return cls(field, None)

    @classmethod
    def finite(cls, poly: UniPoly, check: bool = True) -> BasePlace:
        if check and not (poly.is_monic and is_irreducible(poly)):
            raise FieldError(f"{poly!r} is not monic irreducible")
        return cls(poly.field, poly)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @property
    def residue_field(self) -> FieldSpec:
        return field_make(self.field.p, self.field.m * self.degree)

    def __repr__(self) -> str:
        return "P_inf" if self.poly is None else f"P({self.poly!r})"


@dataclass(frozen=True)
class Laurent:
    """Coefficients c_0, c_1, ... of f = t^valuation * (c_0 + c_1 t + ...)."""

    valuation: int
    coeffs: tuple[FieldElement, ...]

    def coefficient(self, exponent: int) -> FieldElement:
        i = exponent - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        if i < 0:
            return self.coeffs[0].field.zero
        raise IndexError(f"exponent {exponent} beyond the computed window")


@dataclass(frozen=True)
class ReducedPole:
    order: int  # 0 (unramified) or odd (ramified)
    residue: FieldElement | None  # beta, only when order == 0
    steps: int = 0


# -- local analysis ----------------------------------------------------------


def _multiplicity(poly: UniPoly, factor: UniPoly) -> int:
    k = 0
    while not poly.is_zero():
        q, r = poly.divmod(factor)
        if not r.is_zero():
            break
        poly, k = q, k + 1
    return k


def _localize(f: RationalFunction, place: BasePlace) -> tuple[RationalFunction, UniPoly]:
    if place.is_infinite:
        return f.at_infinity(), UniPoly.x(f.field)
    return f, place.poly


def valuation_at(f: RationalFunction, place: BasePlace) -> int:
    if f.is_zero():
        raise ValueError("valuation of the zero function")
    if place.is_infinite:
        return f.den.degree - f.num.degree
    return _multiplicity(f.num, place.poly) - _multiplicity(f.den, place.poly)


@lru_cache(maxsize=4096)
def place_root(place: BasePlace) -> FieldElement:
    """The fixed root of the place polynomial in the residue field (0 for infinity)."""
    if place.is_infinite:
        return place.field.zero
    return find_root(place.poly, place.residue_field)


def _series_mul(a: list[FieldElement], b: list[FieldElement], prec: int) -> list[FieldElement]:
    zero = a[0].field.zero
    out = [zero] * prec
    for i, ai in enumerate(a[:prec]):
        if ai.is_zero():
            continue
        for j in range(min(len(b), prec - i)):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def _series_inv(a: list[FieldElement], prec: int) -> list[FieldElement]:
    inv0 = a[0].inverse()
    out = [inv0]
    for n in range(1, prec):
        acc = a[0].field.zero
        for k in range(1, min(n, len(a) - 1) + 1):
            acc = acc + a[k] * out[n - k]
        out.append(-acc * inv0)
    return out


def _poly_at_series(coeffs: Sequence[FieldElement], x: list[FieldElement], prec: int) -> list[FieldElement]:
    zero = x[0].field.zero
    acc = [zero] * prec
    for c in reversed(coeffs):
        acc = _series_mul(acc, x, prec)
        acc[0] = acc[0] + c
    return acc


def _uniformizer_inverse(poly: UniPoly, root: FieldElement, prec: int) -> list[FieldElement]:
    """x as a power series in t = poly(x), expanded at the given root."""
    L = root.field
    coeffs = [embed_subfield(c, L) for c in poly.coeffs]
    dcoeffs = [embed_subfield(c, L) for c in poly.derivative().coeffs]
    slope = _poly_at_series(dcoeffs, [root], 1)[0].inverse()
    x = [root] + [L.zero] * (prec - 1)
    for _ in range(prec):
        err = _poly_at_series(coeffs, x, prec)
        if prec > 1:
            err[1] = err[1] - L.one
        if not any(not e.is_zero() for e in err):
            break
        x = [xi - slope * ei for xi, ei in zip(x, err)]
    return x


def local_laurent(f: RationalFunction, place: BasePlace, terms: int) -> Laurent:
    """First ``terms`` Laurent coefficients of f at the place, in the residue field.

    The uniformizer is the place polynomial (1/x at infinity).
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    g, unif = _localize(f, place)
    root = place_root(place)
    L = root.field
    vn = _multiplicity(g.num, unif)
    vd = _multiplicity(g.den, unif)
    prec = max(vn, vd) + terms
    x = _uniformizer_inverse(unif, root, prec)
    num = _poly_at_series([embed_subfield(c, L) for c in g.num.coeffs], x, vn + terms)
    den = _poly_at_series([embed_subfield(c, L) for c in g.den.coeffs], x, vd + terms)
    assert all(c.is_zero() for c in num[:vn]) and all(c.is_zero() for c in den[:vd])
    unit = _series_mul(num[vn:], _series_inv(den[vd:], terms), terms)
    return Laurent(vn - vd, tuple(unit))


def as_reduce_char2(f: RationalFunction, place: BasePlace) -> ReducedPole:
    """Strip even pole orders by substitutions y -> y + s t^(-k); see ReducedPole."""
    if f.field.p != 2:
        raise FieldError("Artin-Schreier reduction needs characteristic 2")
    L = place.residue_field
    if f.is_zero():
        return ReducedPole(0, L.zero)
    v = valuation_at(f, place)
    if v > 0:
        return ReducedPole(0, L.zero)
    v0 = -v
    window = dict(zip(range(-v0, 1), local_laurent(f, place, v0 + 1).coeffs))
    steps = 0
    while True:
        order = max((k for k in range(1, v0 + 1) if not window[-k].is_zero()), default=0)
        if order == 0 or order % 2:
            break
        s = square_root_char2(window[-order])
        window[-order] = L.zero  # subtract (s t^-order/2)^2
        window[-order // 2] = window[-order // 2] + s  # and s t^-order/2
        steps += 1
    return ReducedPole(order, window[0] if order == 0 else None, steps)


# -- covers -------------------------------------------------------------------


@dataclass(frozen=True)
class DoubleCover:
    field: FieldSpec
    kind: CoverKind
    f: RationalFunction
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.f.field != self.field:
            raise FieldError("f is not defined over the base field")
        if (self.kind is CoverKind.ARTIN_SCHREIER) != (self.field.p == 2):
            raise FieldError(f"{self.kind.value} cover not available in characteristic {self.field.p}")
        if self.f.is_constant():
            raise DegenerateCoverError(f"constant f = {self.f!r} gives no geometric double cover")
        genus_rh(self)  # raises on covers without ramification

    @property
    def q(self) -> int:
        return self.field.order

    @cached_property
    def special_places(self) -> tuple[BasePlace, ...]:
        """Infinity and the finite places where f is not a local unit."""
        polys = [self.f.den]
        if self.kind is CoverKind.KUMMER:
            polys.append(self.f.num)
        places = {}
        for poly in polys:
            if poly.degree >= 1:
                for factor, _ in factor_by_trial_division(poly):
                    places[factor] = BasePlace.finite(factor, check=False)
        ordered = sorted(places.values(), key=lambda P: (P.degree, [c.coords for c in P.poly.coeffs]))
        return (BasePlace.infinity(self.field), *ordered)

    @cached_property
    def genus(self) -> int:
        return genus_rh(self)

    def __repr__(self) -> str:
        lhs = "y^2 + y" if self.kind is CoverKind.ARTIN_SCHREIER else "y^2"
        return f"{lhs} = {self.f!r} over GF({self.q})"


def splitting(cover: DoubleCover, place: BasePlace) -> SplittingType:
    f = cover.f
    if cover.kind is CoverKind.ARTIN_SCHREIER:
        red = as_reduce_char2(f, place)
        if red.order:
            return SplittingType.RAMIFIED
        return SplittingType.INERT if absolute_trace(red.residue) else SplittingType.SPLIT
    if f.is_zero():
        return SplittingType.RAMIFIED
    v = valuation_at(f, place)
    if v % 2:
        return SplittingType.RAMIFIED
    unit = local_laurent(f, place, 1).coeffs[0]
    chi = quadratic_character(unit)
    return SplittingType.SPLIT if chi is QuadraticCharacter.SQUARE else SplittingType.INERT


def genus_rh(cover: DoubleCover) -> int:
    """Riemann-Hurwitz for a degree-2 cover of the projective line."""
    total = 0
    for place in cover.special_places:
        if cover.kind is CoverKind.ARTIN_SCHREIER:
            order = as_reduce_char2(cover.f, place).order
            if order:
                total += (order + 1) * place.degree
        elif valuation_at(cover.f, place) % 2:
            total += place.degree
    if total % 2:
        raise DegenerateCoverError(f"odd ramification total {total}")
    g = (total - 2) // 2
    if g < 0:
        raise DegenerateCoverError(f"{cover.f!r} has no ramified place: not a geometric double cover")
    return g


def _add_place(counts: list[int], degree: int, kind: SplittingType, k: int) -> None:
    if kind is SplittingType.SPLIT:
        if degree <= k:
            counts[degree] += 2
    elif kind is SplittingType.RAMIFIED:
        if degree <= k:
            counts[degree] += 1
    elif 2 * degree <= k:
        counts[2 * degree] += 1


def _check_count_range(cover: DoubleCover, k: int) -> None:
    if not 1 <= k <= MAX_COUNT_DEGREE:
        raise ValueError(f"max degree {k} outside 1..{MAX_COUNT_DEGREE}")
    if cover.field.m * k > MAX_DEGREE[cover.field.p]:
        raise ValueError(f"residue fields of degree {k} over GF({cover.q}) are not supported")


def count_places(cover: DoubleCover, k: int, method: str = "points") -> tuple[int, ...]:
    """(N_1, ..., N_k): places of the cover by degree.

    ``method="points"`` classifies every residue-field element with the array
    kernels; ``method="places"`` walks the monic irreducibles one at a time.
    Both treat the non-unit places through :func:`splitting`.
    """
    _check_count_range(cover, k)
    if method == "points":
        return _count_points(cover, k)
    if method == "places":
        return _count_places_enumerated(cover, k)
    raise ValueError(f"unknown counting method {method!r}")


def _count_places_enumerated(cover: DoubleCover, k: int) -> tuple[int, ...]:
    counts = [0] * (k + 1)
    _add_place(counts, 1, splitting(cover, BasePlace.infinity(cover.field)), k)
    for d in range(1, k + 1):
        for poly in monic_irreducibles(cover.field, d):
            place = BasePlace.finite(poly, check=False)
            _add_place(counts, d, splitting(cover, place), k)
    return tuple(counts[1:])


def _count_points(cover: DoubleCover, k: int) -> tuple[int, ...]:
    counts = [0] * (k + 1)
    special_by_degree: dict[int, int] = {}
    for place in cover.special_places:
        _add_place(counts, place.degree, splitting(cover, place), k)
        if not place.is_infinite:
            special_by_degree[place.degree] = special_by_degree.get(place.degree, 0) + 1

    base = cover.field
    for d in range(1, k + 1):
        L = field_make(base.p, base.m * d)
        ctx = L.context
        xs = kernels.all_codes(ctx)
        exact = kernels.orbit_degree(xs, base.m, d, ctx) == d
        num = kernels.horner(embed_codes(cover.f.num.coeffs, L), xs, ctx)
        den = kernels.horner(embed_codes(cover.f.den.coeffs, L), xs, ctx)
        if cover.kind is CoverKind.ARTIN_SCHREIER:
            regular = exact & (den != 0)
            vals = kernels.mul(num, kernels.power(den, L.order - 2, ctx), ctx)
            inert_mask = kernels.prime_trace(vals, ctx) == 1
        else:
            # num/den and num*den share a square class
            prod = kernels.mul(num, den, ctx)
            regular = exact & (prod != 0)
            inert_mask = kernels.power(prod, (L.order - 1) // 2, ctx) != 1
        n_split = int(np.count_nonzero(regular & ~inert_mask))
        n_inert = int(np.count_nonzero(regular & inert_mask))
        n_special = int(np.count_nonzero(exact & ~regular))
        assert n_split % d == 0 and n_inert % d == 0
        assert n_special == d * special_by_degree.get(d, 0), "special places disagree with kernel"
        counts[d] += 2 * (n_split // d)
        if 2 * d <= k:
            counts[2 * d] += n_inert // d
    return tuple(counts[1:])


def point_count(cover: DoubleCover, k: int) -> int:
    """Number of points over F_{q^k}: sum over d | k of d * N_d."""
    counts = count_places(cover, k)
    return sum(d * counts[d - 1] for d in range(1, k + 1) if k % d == 0)


# -- JSON records -------------------------------------------------------------


def _parse_coeff(value, field: FieldSpec) -> FieldElement:
    if field.is_prime:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"coefficients over GF({field.order}) must be integers, got {value!r}")
        return field(value)
    if not isinstance(value, str) or len(value) != field.m or any(ch not in "0123456789"[: field.p] for ch in value):
        raise ValueError(
            f"coefficients over GF({field.order}) must be {field.m}-digit base-{field.p} strings, got {value!r}"
        )
    return field.from_code(int(value, field.p))


def _format_coeff(c: FieldElement):
    if c.field.is_prime:
        return c.coords[0]
    return "".join(str(d) for d in reversed(c.coords))


def cover_from_record(record: dict) -> DoubleCover:
    try:
        q = int(record["q"])
        kind = CoverKind(record["kind"])
        num = record["num"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed curve record: {exc}") from exc
    field_ = field_of_order(q)
    num_poly = UniPoly(field_, tuple(_parse_coeff(c, field_) for c in num))
    if "den" in record:
        den_poly = UniPoly(field_, tuple(_parse_coeff(c, field_) for c in record["den"]))
    else:
        den_poly = UniPoly.const(field_.one)
    f = RationalFunction(num_poly, den_poly)
    return DoubleCover(field_, kind, f, label=record.get("label", ""))


def cover_to_record(cover: DoubleCover) -> dict:
    return {
        "q": cover.q,
        "kind": cover.kind.value,
        "num": [_format_coeff(c) for c in cover.f.num.coeffs],
        "den": [_format_coeff(c) for c in cover.f.den.coeffs],
    }
