import pytest

from wizards.engine import (AnalysisError, BudgetExceeded, BudgetExhausted, Certified, Realism,
                            analyze_bus, is_valid_bus, solve, verify_append_one_monotonicity)
from wizards.enumeration import count_partitions
from wizards.statistics import COUNT, PRODUCT, power_sum
from wizards.variants import builtin_variant, custom_variant

from oracles import oracle_solve, pairwise_classes

ORIGINAL = builtin_variant("original")
GENERALIZED = builtin_variant("generalized")
SIMPLIFIED = builtin_variant("simplified")
C3 = builtin_variant("original_c3")


def classes(analysis):
    return {c.key: {p.parts for p in c.partitions} for c in analysis.classes}


def test_bus_12_original():
    a = analyze_bus(12, ORIGINAL)
    assert classes(a) == {(48, 4): {(2, 2, 2, 6), (1, 3, 4, 4)}}
    assert a.ambiguous_targets == (48,)
    assert a.partition_total == 77
    assert is_valid_bus(a)


@pytest.mark.parametrize("bus", [1, 5])
def test_no_classes(bus):
    a = analyze_bus(bus, ORIGINAL)
    assert a.classes == () and a.ambiguous_targets == ()
    assert not is_valid_bus(a)


def test_bus_13_original():
    a = analyze_bus(13, ORIGINAL)
    assert a.ambiguous_targets == (36, 48)
    assert classes(a) == {
        (36, 3): {(2, 2, 9), (1, 6, 6)},
        (48, 5): {(1, 2, 2, 2, 6), (1, 1, 3, 4, 4)},
    }
    assert not is_valid_bus(a)


def test_bus_26_generalized():
    a = analyze_bus(26, GENERALIZED)
    assert classes(a) == {(3456, 7, 124): {(1, 3, 3, 3, 4, 4, 8), (2, 2, 2, 2, 6, 6, 6)}}


def test_three_children_mode():
    assert analyze_bus(13, C3).ambiguous_targets == (36,)
    assert analyze_bus(14, C3).ambiguous_targets == (40, 72)


def test_bus_21_contains_96_and_240():
    a = analyze_bus(21, ORIGINAL)
    assert {96, 240} <= set(a.ambiguous_targets)


def test_classes_sorted_and_members_canonical():
    a = analyze_bus(24, ORIGINAL)
    keys = [c.key for c in a.classes]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for c in a.classes:
        assert len(c.partitions) >= 2
        assert list(c.partitions) == sorted(c.partitions)
        assert c.target == c.key[0]
    members = [p for c in a.classes for p in c.partitions]
    assert len(members) == len(set(members)) <= a.partition_total


@pytest.mark.parametrize("bus", range(1, 16))
@pytest.mark.parametrize("name, names", [
    ("original", ["product", "count"]),
    ("generalized", ["product", "count", "power_sum:2"]),
    ("simplified", ["count"]),
])
def test_matches_pairwise_oracle(bus, name, names):
    assert classes(analyze_bus(bus, builtin_variant(name))) == {
        k: set(v) for k, v in pairwise_classes(bus, names).items()}


@pytest.mark.parametrize("bus", range(1, 16))
def test_count_restricted_matches_oracle(bus):
    want = pairwise_classes(bus, ["product", "count"], count_filter=lambda c: c == 3)
    assert classes(analyze_bus(bus, C3)) == {k: set(v) for k, v in want.items()}


def test_budget_error_instead_of_truncation():
    with pytest.raises(BudgetExceeded):
        analyze_bus(20, ORIGINAL, max_partitions=100)
    assert analyze_bus(20, ORIGINAL, max_partitions=count_partitions(20)).partition_total == 627


def test_bad_bus():
    with pytest.raises(ValueError):
        analyze_bus(0, ORIGINAL)


def test_solve_original():
    out = solve(ORIGINAL, 100)
    assert [(a.bus, a.ambiguous_targets) for a in out.valid_buses] == [(12, (48,))]
    assert out.termination == Certified(13)
    assert [a.bus for a in out.analyses] == list(range(1, 14))


def test_solve_generalized():
    out = solve(GENERALIZED, 100)
    assert [(a.bus, a.ambiguous_targets) for a in out.valid_buses] == [(26, (3456,))]
    assert out.termination == Certified(27)


def test_solve_simplified_matches_oracle():
    out = solve(SIMPLIFIED, 100)
    valid, stop = oracle_solve(["count"], 0, 30)
    assert [(a.bus, a.ambiguous_targets[0]) for a in out.valid_buses] == valid == [(4, 2)]
    assert out.termination == Certified(stop) == Certified(5)


def test_budget_exhausted():
    out = solve(ORIGINAL, 3)
    assert out.valid_buses == [] and out.termination == BudgetExhausted(3)


def test_count_capped_variant_never_certifies():
    out = solve(C3, 20)
    assert isinstance(out.termination, BudgetExhausted)
    assert [a.bus for a in out.valid_buses][:1] == [13]


def test_scan_ignores_certificate():
    out = solve(ORIGINAL, 20, stop_early=False)
    assert len(out.analyses) == 20 and out.termination == Certified(13)


def test_parallel_equals_sequential():
    a = solve(GENERALIZED, 40, jobs=1)
    b = solve(GENERALIZED, 40, jobs=3)
    assert a == b


def test_errors_carry_bus():
    with pytest.raises(AnalysisError) as info:
        solve(ORIGINAL, 30, max_partitions=50)
    assert info.value.bus == 11  # p(11) = 56 is the first to exceed 50


def test_realism_filter_is_opt_in():
    plain = analyze_bus(12, ORIGINAL)
    filtered = analyze_bus(12, ORIGINAL, realism=Realism(min_age=20, children_younger=True))
    assert filtered.partition_total < plain.partition_total
    assert classes(filtered) == classes(plain)
    assert solve(ORIGINAL, 50, realism=Realism(min_age=20)).valid_buses[0].bus == 12


@pytest.mark.parametrize("bus, variant, mapping", [
    (12, ORIGINAL, {48: 48}),
    (26, GENERALIZED, {3456: 3456}),
    (4, SIMPLIFIED, {2: 3}),
])
def test_append_one_witness(bus, variant, mapping):
    report = verify_append_one_monotonicity(bus, variant)
    assert report.ok and report.mapping == mapping


def test_witness_keys():
    report = verify_append_one_monotonicity(26, GENERALIZED)
    assert report.witnesses == [((3456, 7, 124), (3456, 8, 125))]
    report = verify_append_one_monotonicity(12, ORIGINAL)
    assert report.witnesses == [((48, 4), (48, 5))]


def test_witness_flags_count_capped_variant():
    report = verify_append_one_monotonicity(13, C3)
    assert not report.ok


@pytest.mark.parametrize("variant", [ORIGINAL, SIMPLIFIED, GENERALIZED,
                                     custom_variant([PRODUCT], 0, name="age-only"),
                                     custom_variant([COUNT, power_sum(2)], 1, name="dolls")])
def test_monotone_cardinality(variant):
    analyses = [analyze_bus(b, variant) for b in range(1, 32)]
    for here, there in zip(analyses, analyses[1:]):
        assert len(here.ambiguous_targets) <= len(there.ambiguous_targets)
        if here.classes:
            assert verify_append_one_monotonicity(here.bus, variant, here, there).ok


def test_certificate_soundness():
    for variant in (ORIGINAL, SIMPLIFIED, GENERALIZED):
        s = solve(variant, 100).termination.stop_bus
        for b in range(s + 1, s + 11, 3):
            assert len(analyze_bus(b, variant).ambiguous_targets) >= 2
