"""Command-line entry point.

Exit codes: 0 success, 1 a check or verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, criteria, tables
from .doublecover import count_places, cover_from_record
from .zeta import (
    InadmissibleError,
    LPolynomial,
    PlaceCounts,
    SqrtInt,
    admissibility,
    counts_from_lpoly,
    effective_count,
    lpoly_from_counts,
    real_weil,
    sqrt_sign_eval,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path} must hold a JSON object")
    return data


def _sign_text(value: SqrtInt, sign: int) -> str:
    rel = {-1: "< 0", 0: "= 0", 1: "> 0"}[sign]
    return f"{value} ({rel})"


def _signs(H, q: int) -> dict:
    up, s_up = sqrt_sign_eval(H, q)
    low, s_low = sqrt_sign_eval(H, q, negate=True)
    return {
        "H(2√q)": {"value": str(up), "sign": s_up, "text": _sign_text(up, s_up)},
        "H(-2√q)": {"value": str(low), "sign": s_low, "text": _sign_text(low, s_low)},
    }


class Emitter:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, record: dict, lines: list[str]) -> None:
        if self.fmt == "json":
            print(json.dumps(record, indent=2, ensure_ascii=False))
        else:
            print("\n".join(lines))


# -- subcommands -----------------------------------------------------------------------


def cmd_counts_to_lpoly(args, out: Emitter) -> int:
    pc = PlaceCounts.from_record(_read_json(args.file))
    adm = admissibility(pc)
    try:
        L = lpoly_from_counts(pc)
    except InadmissibleError as exc:
        out.emit(
            {"admissible": False, "violations": adm.violations, "error": str(exc)},
            [f"inadmissible: {exc}"],
        )
        return EXIT_FAIL
    A = []
    for m in range(2 * pc.g + 1):
        try:
            A.append(effective_count(L, m))
        except InadmissibleError:
            A.append(None)
    H = real_weil(L)
    signs = _signs(H, pc.q)
    record = {
        "lpoly": L.to_record(),
        "h": L.h,
        "A": A,
        "real_weil": list(H.coeffs),
        "real_weil_text": str(H),
        "signs": signs,
        "admissibility": {
            "admissible": adm.admissible,
            "violations": adm.violations,
            "details": adm.details,
            "diagnostics": adm.diagnostics,
        },
    }
    lines = [
        f"L(t) = {L}",
        f"h = {L.h}",
        "A_0..A_{2g} = " + ", ".join("?" if a is None else str(a) for a in A),
        f"H(T) = {H}",
        f"H(2√q) = {signs['H(2√q)']['text']}",
        f"H(-2√q) = {signs['H(-2√q)']['text']}",
        "admissible" if adm.admissible else "inadmissible: " + "; ".join(adm.details.values()),
    ]
    lines += [f"note: {d}" for d in adm.diagnostics]
    out.emit(record, lines)
    return EXIT_OK if adm.admissible else EXIT_FAIL


def cmd_lpoly_info(args, out: Emitter) -> int:
    L = LPolynomial.from_record(_read_json(args.file))
    H = real_weil(L)
    signs = _signs(H, L.q)
    try:
        N: list[int] | None = list(counts_from_lpoly(L, 2 * L.g))
        err = None
    except InadmissibleError as exc:
        N, err = None, str(exc)
    record = {"h": L.h, "N": N, "real_weil": list(H.coeffs), "real_weil_text": str(H), "signs": signs}
    lines = [f"h = {L.h}"]
    if err:
        record["error"] = err
        lines.append(f"place counts: {err}")
    else:
        lines.append("N_1..N_{2g} = " + ", ".join(map(str, N)))
    lines += [
        f"H(T) = {H}",
        f"H(2√q) = {signs['H(2√q)']['text']}",
        f"H(-2√q) = {signs['H(-2√q)']['text']}",
    ]
    out.emit(record, lines)
    return EXIT_FAIL if err else EXIT_OK


def cmd_curve_count(args, out: Emitter) -> int:
    cover = cover_from_record(_read_json(args.file))
    k = args.max_degree if args.max_degree is not None else max(cover.genus, 1)
    N = count_places(cover, k, method=args.method)
    record = {"q": cover.q, "genus": cover.genus, "N": list(N)}
    out.emit(record, [f"genus = {cover.genus}", "N_1..N_k = " + ", ".join(map(str, N))])
    return EXIT_OK


def cmd_criteria_check(args, out: Emitter) -> int:
    pc = PlaceCounts.from_record(_read_json(args.file))
    try:
        fd = criteria.FieldData(pc)
        _ = fd.L
    except InadmissibleError as exc:
        raise InputError(f"counts do not define an L-polynomial: {exc}") from exc
    props = {
        "eg": [criteria.Property.EG],
        "egm1": [criteria.Property.EGM1],
        "both": list(criteria.Property),
    }[args.property]
    verdicts = [criteria.evaluate(fd, p) for p in props]
    lines = []
    for v in verdicts:
        lines.append(v.summary())
        lines += [f"  {r}: {criteria.RULES[r]}" for r in v.rules]
        lines += [f"  warning: {d}" for d in v.diagnostics]
    for v in verdicts:
        for d in v.diagnostics:
            print(d, file=sys.stderr)
    out.emit({"verdicts": [v.to_record() for v in verdicts]}, lines)
    return EXIT_OK


def cmd_tower_certify(args, out: Emitter) -> int:
    v = criteria.certify_tower_step(args.q, args.g, args.n1)
    lines = [v.summary()] + [f"  {r}: {criteria.RULES[r]}" for r in v.rules]
    out.emit(v.to_record(), lines)
    return EXIT_OK


def cmd_bounds_mu(args, out: Emitter) -> int:
    results = bounds.all_bounds(args.q, args.n)
    lines = [f"{b.formula:>9}: {b.render()}  (coefficient {b.coefficient})" for b in results]
    out.emit({"bounds": [b.to_record() for b in results]}, lines)
    return EXIT_OK


def cmd_tables_verify(args, out: Emitter) -> int:
    report = tables.verify_tables(source=args.source)
    if args.source is not None and not report.rows:
        raise InputError(f"no rows with source {args.source!r}")
    lines = []
    for r in report.rows:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.row.id}: " + ", ".join(r.checks))
        lines += [f"    {n}" for n in r.notes]
    record = report.to_record()
    ok = report.passed
    if args.random:
        failures = tables.identity_suite(args.seed, args.random)
        record["identity_suite"] = {
            "seed": args.seed,
            "instances": args.random,
            "failures": [{"counts": pc.to_record(), "failed": bad} for pc, bad in failures],
        }
        lines.append(f"identity suite: {args.random - len(failures)}/{args.random} instances pass (seed {args.seed})")
        ok = ok and not failures
    passed = sum(r.passed for r in report.rows)
    lines.append(f"{passed}/{len(report.rows)} rows pass")
    out.emit(record, lines)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    # subcommands repeat the flags without overriding values given before them
    p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS if suppress else "text")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(
        prog="nonspecial",
        description="Zeta invariants, place counts and non-special divisor criteria for function fields.",
        parents=[_global_flags(suppress=False)],
    )
    top = parser.add_subparsers(dest="group", required=True)

    zeta = top.add_parser("zeta", help="L-polynomial tools").add_subparsers(dest="cmd", required=True)
    p = zeta.add_parser("counts-to-lpoly", parents=[common], help="L-polynomial and invariants from place counts")
    p.add_argument("file")
    p.set_defaults(func=cmd_counts_to_lpoly)
    p = zeta.add_parser("lpoly-info", parents=[common], help="invariants of a given L-polynomial")
    p.add_argument("file")
    p.set_defaults(func=cmd_lpoly_info)

    curve = top.add_parser("curve", help="double covers of the projective line").add_subparsers(dest="cmd", required=True)
    p = curve.add_parser("count", parents=[common], help="count places by degree")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--method", choices=("points", "places"), default="points")
    p.set_defaults(func=cmd_curve_count)

    crit = top.add_parser("criteria", help="non-special divisor criteria").add_subparsers(dest="cmd", required=True)
    p = crit.add_parser("check", parents=[common], help="evaluate the criteria on place counts")
    p.add_argument("file")
    p.add_argument("--property", choices=("eg", "egm1", "both"), default="both")
    p.set_defaults(func=cmd_criteria_check)

    tower = top.add_parser("tower", help="tower steps").add_subparsers(dest="cmd", required=True)
    p = tower.add_parser("certify", parents=[common], help="degree g - 1 certificate from (q, g, N_1)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.set_defaults(func=cmd_tower_certify)

    bnd = top.add_parser("bounds", help="bilinear complexity bounds").add_subparsers(dest="cmd", required=True)
    p = bnd.add_parser("mu", parents=[common], help="evaluate all bounds at (q, n)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_bounds_mu)

    tab = top.add_parser("tables", help="shipped dataset").add_subparsers(dest="cmd", required=True)
    p = tab.add_parser("verify", parents=[common], help="verify every dataset row")
    p.add_argument("--source", default=None)
    p.add_argument("--random", type=int, default=0, metavar="K", help="also run K seeded random identity checks")
    p.set_defaults(func=cmd_tables_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    out = Emitter(args.format)
    try:
        return args.func(args, out)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
