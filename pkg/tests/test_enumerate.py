import itertools

import pytest

from gapseries.enumerate import (
    Composition,
    GapClass,
    Partition,
    count_gap_compositions,
    count_gap_partitions,
    gap_compositions,
    gap_partitions,
    is_gap_composition,
    is_gap_partition,
    is_m_step,
)
from gapseries.errors import EnumerationLimitError, MembershipError

G2 = GapClass(2, 1)


def all_compositions(n):
    """Every composition of n, via the subsets of the n-1 cut points."""
    for cuts in itertools.product((False, True), repeat=max(n - 1, 0)):
        if n == 0:
            yield ()
            return
        parts, current = [], 1
        for cut in cuts:
            if cut:
                parts.append(current)
                current = 1
            else:
                current += 1
        parts.append(current)
        yield tuple(parts)


def test_gap_class_validation():
    with pytest.raises(MembershipError):
        GapClass(-1, 1)
    with pytest.raises(MembershipError):
        GapClass(1, 0)
    assert str(GapClass(2, 3)) == "g=2,s=3"


def test_partition_must_be_nondecreasing():
    with pytest.raises(MembershipError):
        Partition((3, 1))
    with pytest.raises(MembershipError):
        Composition((2, 0))


def test_membership_examples():
    assert is_gap_partition(Partition(), GapClass(7, 3))
    assert is_gap_partition(Partition((1, 3)), G2)
    assert not is_gap_partition(Partition((4, 5)), G2)
    assert is_gap_composition(Composition((2, 1, 1)), G2)
    assert not is_gap_composition(Composition((3, 1)), G2)
    assert is_gap_composition(Composition((1, 2, 3)), GapClass(1, 1))
    assert not is_gap_composition(Composition((1, 2)), GapClass(1, 2))
    assert not is_gap_composition(Composition((3, 2)), GapClass(2, 3))


def test_m_step_examples():
    assert is_m_step(Composition(), 1)
    assert is_m_step(Composition((1, 2, 3)), 1)
    assert not is_m_step(Composition((2,)), 1)


def test_enumeration_examples():
    assert gap_partitions(0, G2) == [Partition()]
    assert gap_compositions(0, G2) == [Composition()]
    assert gap_partitions(4, G2) == [Partition((1, 3)), Partition((4,))]
    largest_five = [p for p in gap_partitions(9, G2, max_part=5) if p.last == 5]
    assert largest_five == [Partition((1, 3, 5))]
    assert set(gap_compositions(3, G2)) == {
        Composition((3,)),
        Composition((1, 2)),
        Composition((2, 1)),
        Composition((1, 1, 1)),
    }
    assert count_gap_compositions(4, G2) == 7


@pytest.mark.parametrize("g, s", [(0, 1), (1, 1), (2, 1), (1, 2), (3, 2)])
def test_compositions_match_filtered_brute_force(g, s):
    cls = GapClass(g, s)
    for n in range(11):
        expected = sorted(c for c in all_compositions(n) if is_gap_composition(Composition(c), cls))
        assert sorted(c.parts for c in gap_compositions(n, cls)) == expected


def test_compositions_with_gap_one_are_partitions():
    for n in range(26):
        assert count_gap_compositions(n, GapClass(1, 1)) == count_gap_partitions(n, GapClass(0, 1))


def test_compositions_with_gap_zero_are_distinct_partitions():
    for n in range(26):
        assert count_gap_compositions(n, GapClass(0, 1)) == count_gap_partitions(n, GapClass(1, 1))


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_relaxing_the_gap_never_lowers_counts(g, s):
    # a larger g relaxes compositions and tightens partitions
    for n in range(16):
        assert count_gap_compositions(n, GapClass(g + 1, s)) >= count_gap_compositions(n, GapClass(g, s))
        assert count_gap_partitions(n, GapClass(g, s)) >= count_gap_partitions(n, GapClass(g + 1, s))


def test_partition_counts():
    # p(n) and partitions into distinct parts
    assert [count_gap_partitions(n, GapClass(0, 1)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert [count_gap_partitions(n, GapClass(1, 1)) for n in range(11)] == [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]


def test_filters():
    cls = GapClass(1, 1)
    for n in range(10):
        for c in gap_compositions(n, cls, min_first=2):
            assert c.first >= 2
        for c in gap_compositions(n, cls, m_step=1):
            assert is_m_step(c, 1)
        for p in gap_partitions(n, cls, length=2):
            assert p.length == 2
    assert count_gap_compositions(10, GapClass(1, 1), length=3) == 8


def test_enumerated_objects_are_members():
    cls = GapClass(2, 2)
    for n in range(14):
        for p in gap_partitions(n, cls):
            assert p.size == n and is_gap_partition(p, cls)
        for c in gap_compositions(n, cls):
            assert c.size == n and is_gap_composition(c, cls)


def test_enumeration_limit(monkeypatch):
    monkeypatch.setenv("GAPSERIES_ENUM_LIMIT", "5")
    with pytest.raises(EnumerationLimitError):
        gap_partitions(6, G2)
    assert count_gap_partitions(5, G2) == 2
