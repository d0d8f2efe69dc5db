"""Shipped table of known function fields and the verification runner."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .criteria import FieldData, Property, Status, evaluate
from .doublecover import cover_from_record, count_places
from .zeta import (
    InadmissibleError,
    LPolynomial,
    PlaceCounts,
    a_gminus1_closed,
    admissibility,
    counts_from_lpoly,
    effective_count,
    effective_count_euler,
    lpoly_from_counts,
    random_admissible,
)

KINDS = ("double-cover-countable", "zeta-consistency-only")


@dataclass(frozen=True)
class TableRow:
    id: str
    source: str
    provenance: str
    q: int
    g: int
    equation: str
    N: tuple[int, ...]
    h: int
    kind: str
    exceptions: frozenset[Property]
    cross_refs: tuple[str, ...] = ()
    curve: dict | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"row {self.id}: unknown kind {self.kind!r}")
        if (self.kind == KINDS[0]) != (self.curve is not None):
            raise ValueError(f"row {self.id}: countable rows need a curve and only they have one")

    @classmethod
    def from_record(cls, r: dict) -> TableRow:
        return cls(
            id=r["id"],
            source=r["source"],
            provenance=r["provenance"],
            q=int(r["q"]),
            g=int(r["g"]),
            equation=r["equation"],
            N=tuple(r["N"]),
            h=int(r["h"]),
            kind=r["kind"],
            exceptions=frozenset(Property(p) for p in r["exceptions"]),
            cross_refs=tuple(r.get("cross_refs", ())),
            curve=r.get("curve"),
        )


@lru_cache(maxsize=1)
def load_tables() -> tuple[TableRow, ...]:
    text = resources.files("nonspecial").joinpath("data/tables.json").read_text(encoding="utf-8")
    return tuple(TableRow.from_record(r) for r in json.loads(text)["rows"])


@dataclass
class RowReport:
    row: TableRow
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def check(self, name: str, ok: bool, note: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and bool(ok)
        if not ok and note:
            self.notes.append(f"{name}: {note}")

    def to_record(self) -> dict:
        return {"id": self.row.id, "passed": self.passed, "checks": self.checks, "notes": self.notes}


def genus4_class_number_forms(L: LPolynomial, N) -> dict[str, bool]:
    """q = 2, g = 4 relations between h, A_2, A_4 and the place counts."""
    A2, A4 = effective_count(L, 2), effective_count(L, 4)
    out = {
        "h = A4 - 2 A2": L.h == A4 - 2 * A2,
        "A2 from N": A2 == Fraction(N[0] * (N[0] + 1), 2) + N[1],
    }
    if N[0] == 1:
        out["closed form"] = L.h == N[3] + N[2] + Fraction(N[1] ** 2 - N[1], 2) - 1
    elif N[0] == 0:
        out["closed form"] = L.h == N[3] + Fraction(N[1] ** 2 - 3 * N[1], 2)
    return out


def verify_row(row: TableRow) -> RowReport:
    rep = RowReport(row)
    pc = PlaceCounts(row.q, row.g, row.N)

    if row.curve is not None:
        cover = cover_from_record(row.curve)
        counted = count_places(cover, row.g)
        rep.check("count", counted == row.N, f"counted {counted}, table {row.N}")
        rep.check("genus", cover.genus == row.g, f"genus {cover.genus}, table {row.g}")

    try:
        L = lpoly_from_counts(pc)
    except InadmissibleError as exc:
        rep.check("class-number", False, str(exc))
        return rep
    rep.check("class-number", L.h == row.h, f"L(1) = {L.h}, table {row.h}")
    adm = admissibility(pc)
    rep.check("admissible", adm.admissible, ", ".join(adm.violations))

    fd = FieldData(pc)
    for prop in Property:
        verdict = evaluate(fd, prop)
        flagged = verdict.status is Status.EXCEPTION_LISTED
        claimed = prop in row.exceptions
        rep.check("criteria", flagged == claimed, f"{prop.value}: flagged={flagged}, claimed={claimed}")
        rep.check("criteria", not verdict.diagnostics, "; ".join(verdict.diagnostics))

    if row.q == 2 and row.g == 4:
        for name, ok in genus4_class_number_forms(L, row.N).items():
            rep.check("genus-4 forms", ok, name)
    return rep


@dataclass
class TablesReport:
    rows: list[RowReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_record(self) -> dict:
        return {"passed": self.passed, "rows": [r.to_record() for r in self.rows]}


def verify_tables(rows=None, source: str | None = None) -> TablesReport:
    rows = load_tables() if rows is None else rows
    selected = sorted((r for r in rows if source is None or r.source == source), key=lambda r: r.id)
    return TablesReport([verify_row(r) for r in selected])


# -- identity suite on random admissible instances ---------------------------------------


def identity_failures(pc: PlaceCounts) -> list[str]:
    """Exact identities every admissible instance must satisfy; returns the failing ones."""
    q, g = pc.q, pc.g
    L = lpoly_from_counts(pc)
    h = L.h
    A = [effective_count(L, m) for m in range(2 * g + 1)]
    bad = []
    for n in range(2 * g - 1):
        # A_n = q^{n+1-g} A_{2g-2-n} + h (q^{n+1-g} - 1)/(q - 1)
        scale = Fraction(q) ** (n + 1 - g)
        if A[n] != scale * A[2 * g - 2 - n] + h * (scale - 1) / (q - 1):
            bad.append(f"functional equation for A_{n}")
    if g >= 2 and A[g] != h + q * A[g - 2]:
        bad.append("A_g = h + q A_{g-2}")
    if a_gminus1_closed(L) != A[g - 1]:
        bad.append("closed form for A_{g-1}")
    if g >= 2 and (A[g] < h * (q + 1)) != (A[g - 2] < h):
        bad.append("A_g < (q+1) h iff A_{g-2} < h")
    N_full = counts_from_lpoly(L, 2 * g)
    for m in range(2 * g + 1):
        if effective_count_euler(N_full[:m], m) != A[m]:
            bad.append(f"Euler product for A_{m}")
    if N_full[:g] != pc.N:
        bad.append("counts round trip")
    return bad


def identity_suite(seed: int, count: int, qs=(2, 3, 4, 5), max_genus: int = 6) -> list[tuple[PlaceCounts, list[str]]]:
    """Run :func:`identity_failures` on ``count`` seeded random instances; return the failures."""
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        q = rng.choice(qs)
        g = rng.randint(1, max_genus)
        pc, _L = random_admissible(rng, q, g)
        bad = identity_failures(pc)
        if bad:
            failures.append((pc, bad))
    return failures
