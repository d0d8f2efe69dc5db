import random

from nonspecial.criteria import Property
from nonspecial.tables import genus4_class_number_forms, identity_suite, load_tables, verify_tables
from nonspecial.zeta import PlaceCounts, lpoly_from_counts


def test_inventory():
    rows = load_tables()
    assert len(rows) == 29
    counts = {}
    for r in rows:
        counts[r.source] = counts.get(r.source, 0) + 1
    assert counts == {"genus1": 3, "h1": 4, "h2": 15, "genus3-egm1": 7}
    assert len({r.id for r in rows}) == 29
    assert sum(r.kind == "double-cover-countable" for r in rows) == 13
    ids = {r.id for r in rows}
    for r in rows:
        for ref in r.cross_refs:
            assert ref in ids
            other = next(o for o in rows if o.id == ref)
            assert (other.q, other.g, other.N, other.h, other.equation) == (r.q, r.g, r.N, r.h, r.equation)
            assert r.id in other.cross_refs


def test_countable_rows_are_double_covers():
    for r in load_tables():
        is_cover = r.equation.startswith(("y^2 + y +", "y^2 -"))
        assert is_cover == (r.kind == "double-cover-countable"), r.id


def test_claimed_exception_counts():
    rows = load_tables()
    assert sum(Property.EG in r.exceptions for r in rows) == 2
    # one field is listed twice: once per table it appears in
    assert sum(Property.EGM1 in r.exceptions for r in rows) == 3 + 2 + 7 + 4


def test_full_verification_passes():
    rep = verify_tables()
    assert rep.passed, [r.to_record() for r in rep.rows if not r.passed]
    assert len(rep.rows) == 29


def test_verification_is_order_independent():
    rows = list(load_tables())
    random.Random(1).shuffle(rows)
    assert verify_tables(rows).to_record() == verify_tables().to_record()


def test_source_filter():
    rep = verify_tables(source="genus1")
    assert [r.row.id for r in rep.rows] == ["genus1-q2", "genus1-q3", "genus1-q4"]


def test_verification_catches_a_corrupted_row():
    from dataclasses import replace

    rows = list(load_tables())
    bad = replace(rows[0], h=2)
    rep = verify_tables([bad])
    assert not rep.passed
    assert not rep.rows[0].checks["class-number"]
    bad = replace(next(r for r in rows if r.id == "h1-g2-a"), N=(1, 3))
    assert not verify_tables([bad]).passed


def test_genus4_examples():
    L = lpoly_from_counts(PlaceCounts(2, 4, (0, 1, 3, 3)))
    assert L.h == 2
    assert all(genus4_class_number_forms(L, (0, 1, 3, 3)).values())


def test_identity_suite_smoke():
    assert identity_suite(seed=7, count=50) == []
