import logging

import pytest

from gapseries.enumerate import GapClass, count_gap_compositions
from gapseries.errors import DimensionError, HypothesisError
from gapseries.genfun import M_by_enumeration
from gapseries.reciprocity import (
    Triangle,
    build_gamma,
    build_mu,
    check_inverse,
    check_inverse_pair,
    check_stabilization,
    gamma_product,
    overpartition_counts,
    stable_rows,
    triangle_mul,
    tuple_count,
)

logger = logging.getLogger(__name__)

MU_G2 = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, -1, -1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, -1, -1, -1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, -1, -1, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, -1, -1, -1, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, -1, -1, -1, 1, 0, 0],
    [0, 0, 0, 0, 2, 0, 0, -1, -1, -1, 1, 0],
    [0, 0, 0, 0, 1, 1, 0, 0, -1, -1, -1, 1],
]

GAMMA_G2 = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [2, 2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [3, 3, 2, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [6, 6, 4, 2, 1, 1, 0, 0, 0, 0, 0, 0],
    [10, 10, 6, 4, 2, 1, 1, 0, 0, 0, 0, 0],
    [19, 19, 12, 7, 4, 2, 1, 1, 0, 0, 0, 0],
    [33, 33, 21, 12, 7, 4, 2, 1, 1, 0, 0, 0],
    [60, 60, 38, 22, 13, 7, 4, 2, 1, 1, 0, 0],
    [106, 106, 67, 39, 22, 13, 7, 4, 2, 1, 1, 0],
    [190, 190, 120, 70, 40, 23, 13, 7, 4, 2, 1, 1],
]


def as_lists(triangle):
    return [list(row) for row in triangle.entries]


def test_mu_for_gap_two():
    assert as_lists(build_mu(GapClass(2, 1), 12)) == MU_G2


def test_gamma_for_gap_two():
    assert as_lists(build_gamma(GapClass(2, 1), 12)) == GAMMA_G2


def test_mu_for_distinct_parts_matches_signed_enumeration():
    cls = GapClass(1, 1)
    mu = build_mu(cls, 12)
    for i in range(1, 13):
        for j in range(1, i + 1):
            assert mu[i, j] == M_by_enumeration(i + 1, j + 1, cls)


def test_mu_needs_positive_gap():
    with pytest.raises(HypothesisError):
        build_mu(GapClass(0, 1), 5)


def test_products_are_the_identity():
    mu, gamma = build_mu(GapClass(2, 1), 12), build_gamma(GapClass(2, 1), 12)
    assert triangle_mul(mu, gamma) == Triangle.identity(12)
    assert triangle_mul(gamma, mu) == Triangle.identity(12)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_check_inverse(g, s):
    check = check_inverse(GapClass(g, s), 30)
    assert check.holds, check.location


def test_check_inverse_reports_a_corrupted_cell():
    check = check_inverse(GapClass(2, 1), 12, corrupt=(3, 2))
    assert not check.holds
    assert check.location == "mu*gamma(3,1)"
    assert check.detail == "expected 0, got 1"


def test_check_inverse_pair_with_wrong_gamma():
    mu = build_mu(GapClass(2, 1), 8)
    gamma = build_gamma(GapClass(1, 1), 8)
    assert not check_inverse_pair(mu, gamma)


def test_triangle_validation():
    with pytest.raises(DimensionError):
        Triangle(2, ((1, 1), (0, 1)))
    with pytest.raises(DimensionError):
        Triangle(2, ((1,), (0, 1)))
    with pytest.raises(DimensionError):
        Triangle.identity(3)[4, 1]
    with pytest.raises(DimensionError):
        triangle_mul(Triangle.identity(2), Triangle.identity(3))


@pytest.mark.parametrize("entry", [1.7, 1.0, "1", True, None])
def test_triangle_rejects_entries_that_are_not_integers(entry):
    with pytest.raises(DimensionError, match="must be an integer"):
        Triangle(2, ((1, 0), (entry, 1)))


def test_malformed_matrix_text():
    with pytest.raises(DimensionError):
        Triangle.from_csv("1,0\nx,1\n")
    with pytest.raises(DimensionError):
        Triangle.from_csv("")
    with pytest.raises(DimensionError):
        Triangle.from_json('{"dim": 2, "entries": [[1, 0], [1.7, 1]]}')
    with pytest.raises(DimensionError):
        Triangle.from_json('{"entries": [[1]]}')
    with pytest.raises(DimensionError):
        Triangle.from_json('{"dim": 1, "entries": [1]}')
    with pytest.raises(ValueError):
        Triangle.from_json("{not json")


def test_csv_and_json_round_trip():
    gamma = build_gamma(GapClass(2, 1), 12)
    assert Triangle.from_csv(gamma.to_csv()) == gamma
    assert Triangle.from_json(gamma.to_json(g=2, s=1, kind="gamma")) == gamma
    assert gamma.to_csv().splitlines()[3] == "2,2,1,1,0,0,0,0,0,0,0,0"
    assert gamma.row(4) == tuple(GAMMA_G2[3])


def test_empty_product_is_the_identity():
    assert gamma_product([], 6) == Triangle.identity(6)
    assert tuple_count([], 1, 0) == 1
    assert tuple_count([], 1, 3) == 0


def test_gamma_product_needs_a_common_s():
    with pytest.raises(HypothesisError):
        gamma_product([GapClass(1, 1), GapClass(1, 2)], 4)


def test_single_gamma_stabilizes_to_composition_counts():
    gamma = build_gamma(GapClass(2, 1), 12)
    for k in range(6):
        expected = count_gap_compositions(k, GapClass(2, 1))
        for n in stable_rows(k, 1, 12):
            assert gamma[n, n - k] == expected


def test_overpartitions():
    assert overpartition_counts(8) == [1, 2, 4, 8, 14, 24, 40, 64, 100]
    product = gamma_product([GapClass(0, 1), GapClass(1, 1)], 20)
    for k, expected in enumerate(overpartition_counts(8)):
        assert product[2 * k + 2, k + 2] == expected


@pytest.mark.parametrize("gs", [[0], [1], [2], [3], [0, 1], [1, 0], [2, 2], [0, 1, 3]], ids=str)
@pytest.mark.parametrize("s", [1, 2, 3])
def test_stabilization(gs, s):
    check = check_stabilization(gs, s, 6)
    assert check.holds, check.location


def test_rows_at_the_stabilization_bound(caplog):
    below = []
    with caplog.at_level(logging.INFO, logger=__name__):
        for g in range(4):
            for s in (1, 2, 3):
                gamma = build_gamma(GapClass(g, s), 20)
                for k in range(s, 9):
                    expected = tuple_count([g], s, k)
                    n = 2 * k - s + 1
                    assert gamma[n, n - k] == expected
                    # one row earlier is outside the proven range; only record it
                    if k > s:
                        entry = gamma[n - 1, n - 1 - k]
                        below.append((g, s, k, entry, expected))
                        logger.info(f"g={g} s={s} k={k} row {n - 1}: entry {entry}, stable value {expected}")
    assert len(below) == len([record for record in caplog.records if record.name == __name__])
