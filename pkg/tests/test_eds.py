"""Denominator-sequence generation, validation, and persistence."""

from fractions import Fraction

import pytest

from edskit.curve import WeierstrassCurve
from edskit.eds import EdsTable, _term_from_point, eds_range, eds_term
from edskit.errors import BudgetExceeded, NonSquareDenominator, TableMiss, TorsionPoint

F = Fraction


def test_eds_term_examples(curve37, point37):
    t5 = eds_term(curve37, point37, 5)
    assert (t5.A, t5.D) == (1, 2)  # x([5]P) = 1/4
    t7 = eds_term(curve37, point37, 7)
    assert (t7.A, t7.D) == (-5, 3)  # x([7]P) = -5/9
    t8 = eds_term(curve37, point37, 8)
    assert (t8.A, t8.D) == (21, 5)  # x([8]P) = 21/25


def test_eds_term_rejects_bad_n(curve37, point37):
    with pytest.raises(ValueError):
        eds_term(curve37, point37, 0)


def test_eds_term_torsion_point():
    E = WeierstrassCurve(0, -1, 1, 0, 0)  # (0,0) has order 5 here
    with pytest.raises(TorsionPoint):
        eds_term(E, (F(0), F(0)), 5)


def test_non_square_denominator_guard():
    with pytest.raises(NonSquareDenominator):
        _term_from_point((F(1, 3), F(1, 5)), 1)


def test_eds_range_fixture_prefix(table37):
    assert table37.d_values()[:8] == [1, 1, 1, 1, 2, 1, 3, 5]


def test_eds_range_n_equals_one(curve37, point37):
    t = eds_range(curve37, point37, 1)
    assert t.d_values() == [1]


def test_eds_range_matches_direct_terms(curve37, point37, table37):
    for n in (1, 9, 23, 41, 60):
        direct = eds_term(curve37, point37, n)
        assert (table37.A(n), table37.D(n)) == (direct.A, direct.D)


def test_divisibility_scan_clean(table37, table43):
    assert table37.check_divisibility() == []
    assert table43.check_divisibility() == []


def test_table_lookup_bounds(table37):
    with pytest.raises(TableMiss):
        table37.D(0)
    with pytest.raises(TableMiss):
        table37.D(61)


def test_torsion_point_range():
    E = WeierstrassCurve(0, -1, 1, 0, 0)
    with pytest.raises(TorsionPoint):
        eds_range(E, (F(0), F(0)), 8)


def test_growth_guard(curve37, point37q):
    # D_n for this point grows fast enough that 40 terms project far
    # beyond a 50-digit budget.
    with pytest.raises(BudgetExceeded):
        eds_range(curve37, point37q, 40, max_digits=50)


def test_dump_load_round_trip(tmp_path, curve37, point37, table37):
    path = str(tmp_path / "table.jsonl")
    table37.dump(path)
    loaded = EdsTable.load(path, curve37, point37)
    assert loaded.d_values() == table37.d_values()
    assert loaded.content_hash() == table37.content_hash()


def test_load_rejects_wrong_curve(tmp_path, curve37, point37, point37q, table37):
    path = str(tmp_path / "table.jsonl")
    table37.dump(path)
    with pytest.raises(ValueError):
        EdsTable.load(path, curve37, point37q)


def test_cache_round_trip(tmp_path, curve37, point37):
    cache = str(tmp_path / "cache")
    first = eds_range(curve37, point37, 12, cache_dir=cache)
    again = eds_range(curve37, point37, 12, cache_dir=cache)
    assert again.d_values() == first.d_values()
    # A shorter request is served by truncating the cached table.
    short = eds_range(curve37, point37, 5, cache_dir=cache)
    assert short.d_values() == first.d_values()[:5]


def test_content_hash_distinguishes_points(table37, table37q):
    assert table37.content_hash() != table37q.content_hash()


def test_second_point_is_fifth_multiple(table37, table37q):
    # (1/4, -5/8) = [5](0,0), so its sequence is the subsequence at 5n.
    for n in range(1, 13):
        assert table37q.D(n) == table37.D(5 * n)
