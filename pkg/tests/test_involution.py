import pytest

from gapseries.enumerate import Composition, GapClass, Partition
from gapseries.errors import MembershipError
from gapseries.involution import PROPERTIES, PairState, iter_pairs, phi, verify_involution

G2 = GapClass(2, 1)


def pair(lam=(), kappa=()):
    return PairState(Partition(lam), Composition(kappa))


def test_fixed_point():
    assert phi(pair(), G2) == pair()


def test_examples():
    assert phi(pair((1, 3)), G2) == pair((1,), (3,))
    assert phi(pair((1,), (3,)), G2) == pair((1, 3))


def test_small_gap_appends_to_the_composition():
    # 2 - 1 < 2, so the largest part of lam moves
    assert phi(pair((1,), (2,)), G2) == pair((), (2, 1))
    assert phi(pair((), (2, 1)), G2) == pair((1,), (2,))


def test_rejects_pairs_outside_the_class():
    with pytest.raises(MembershipError):
        phi(pair((4, 5)), G2)
    with pytest.raises(MembershipError):
        phi(pair((), (3, 1)), G2)


def test_weight_and_membership():
    p = pair((1, 3), (2,))
    assert p.weight == 1
    assert pair((1,)).weight == -1
    assert p.total_size == 6 and p.total_length == 3
    assert p.in_pi_m(2) and not p.in_pi_m(3)
    assert p.in_pi_m_star(2)
    assert not pair((1,)).in_pi_m_star(2)
    assert pair((1, 3)).in_pi_m_star(2)
    assert not pair().in_pi_m_star(1)


def test_iter_pairs_covers_every_size():
    pairs = list(iter_pairs(GapClass(1, 1), 4))
    assert len(pairs) == len(set(pairs))
    assert {p.total_size for p in pairs} == set(range(5))
    assert all(p.in_pi(GapClass(1, 1)) for p in pairs)


@pytest.mark.parametrize("g", [0, 1, 2, 3])
@pytest.mark.parametrize("s", [1, 2])
def test_verify_involution(g, s):
    report = verify_involution(GapClass(g, s), 14)
    assert report.passed, report.violations
    assert report.pairs_checked > 0
    check = report.to_check()
    assert check.holds
    assert check.name == "involution"


def test_verify_involution_with_larger_minimum_part():
    assert verify_involution(GapClass(0, 2), 12).passed


def test_report_names_the_first_failing_property():
    report = verify_involution(GapClass(1, 1), 4)
    report.record("length", "made up")
    check = report.to_check()
    assert not check.holds
    assert check.location == "length"
    assert set(report.violations) == set(PROPERTIES)
