"""
The sign-reversing involution on pairs (gap partition, gap composition).

phi moves one part between the two members of a pair: the last part of the
composition joins the partition when it is at least g above the partition's
largest part, otherwise the partition's largest part is appended to the
composition. Weighting a pair by (-1)^length(partition), phi flips the sign of
every pair except (empty, empty), which is what makes P(-x, q) C(x, q)
collapse to 1 and P(-x, q) C_{>=m}(x, q) collapse to P_{<=m-1}(-x, q).
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterator, List

from gapseries.checks import IdentityCheck
from gapseries.enumerate import (
    Composition,
    GapClass,
    Partition,
    check_enumeration_limit,
    gap_compositions,
    is_gap_composition,
    is_gap_partition,
    iter_gap_partitions,
)
from gapseries.errors import MembershipError
from gapseries.genfun import SeriesRequest, series_P_le_m, signed_P_le

logger = logging.getLogger(__name__)

PROPERTIES = (
    "closure",
    "involution",
    "size",
    "length",
    "weight",
    "restriction",
    "cancellation",
    "boundary",
    "specialization",
)


@dataclass(frozen=True)
class PairState:
    lam: Partition = Partition()
    kappa: Composition = Composition()

    @property
    def weight(self) -> int:
        return -1 if self.lam.length % 2 else 1

    @property
    def total_size(self) -> int:
        return self.lam.size + self.kappa.size

    @property
    def total_length(self) -> int:
        return self.lam.length + self.kappa.length

    def in_pi(self, cls: GapClass) -> bool:
        return is_gap_partition(self.lam, cls) and is_gap_composition(self.kappa, cls)

    def in_pi_m(self, m: int) -> bool:
        """The composition is empty or starts with a part of at least m."""
        return not self.kappa or self.kappa.first >= m

    def in_pi_m_star(self, m: int) -> bool:
        """In Pi_m, and not a pair (lam, empty) with lam empty or largest part below m."""
        if not self.in_pi_m(m):
            return False
        if self.kappa:
            return True
        return bool(self.lam) and self.lam.last >= m

    def __str__(self) -> str:
        return f"({self.lam}, {self.kappa})"


def phi(pair: PairState, cls: GapClass) -> PairState:
    """
    Apply the involution to a pair in Pi.

    :param pair: A pair whose partition and composition both lie in the gap class.
    :param cls: The gap class.
    """
    if not pair.in_pi(cls):
        raise MembershipError(f"{pair} is not a pair of the gap class {cls}")
    lam, kappa = pair.lam.parts, pair.kappa.parts
    if not lam and not kappa:
        return pair
    if not kappa:
        return PairState(Partition(lam[:-1]), Composition(lam[-1:]))
    if not lam:
        return PairState(Partition(kappa[-1:]), Composition(kappa[:-1]))
    if kappa[-1] - lam[-1] >= cls.g:
        return PairState(Partition(lam + kappa[-1:]), Composition(kappa[:-1]))
    return PairState(Partition(lam[:-1]), Composition(kappa + lam[-1:]))


def iter_pairs(cls: GapClass, size_bound: int) -> Iterator[PairState]:
    """Every pair in Pi with total size at most size_bound, grouped by total size."""
    check_enumeration_limit(size_bound)
    compositions = {n: gap_compositions(n, cls) for n in range(size_bound + 1)}
    for total in range(size_bound + 1):
        for a in range(total + 1):
            for lam in iter_gap_partitions(a, cls):
                for kappa in compositions[total - a]:
                    yield PairState(lam, kappa)


@dataclass
class InvolutionReport:
    cls: GapClass
    size_bound: int
    pairs_checked: int = 0
    violations: Dict[str, List[str]] = field(
        default_factory=lambda: {name: [] for name in PROPERTIES}
    )

    @property
    def passed(self) -> bool:
        return not any(self.violations.values())

    def record(self, prop: str, detail: str) -> None:
        self.violations[prop].append(detail)

    def to_check(self) -> IdentityCheck:
        params = {"g": self.cls.g, "s": self.cls.s, "B": self.size_bound}
        for prop in PROPERTIES:
            if self.violations[prop]:
                return IdentityCheck(
                    "involution",
                    params,
                    holds=False,
                    location=prop,
                    detail=f"{len(self.violations[prop])} violations, first {self.violations[prop][0]}",
                )
        return IdentityCheck("involution", params, detail=f"{self.pairs_checked} pairs")


def verify_involution(cls: GapClass, size_bound: int) -> InvolutionReport:
    """
    Exhaustively check phi on every pair of total size at most size_bound.

    Checks closure in Pi, phi(phi(p)) = p, preservation of total size and
    total length, the weight flip away from (empty, empty), and for every
    1 <= m <= size_bound that phi preserves Pi_m*, that the weighted sum over
    Pi_m* vanishes, and that the remainder Pi_m minus Pi_m* sums to P_{<=m-1}(-x, q).
    """
    report = InvolutionReport(cls, size_bound)
    bounds = range(1, size_bound + 1)
    star_sums = {m: defaultdict(int) for m in bounds}
    rest_sums = {m: defaultdict(int) for m in bounds}
    empty = PairState()

    for pair in iter_pairs(cls, size_bound):
        report.pairs_checked += 1
        try:
            image = phi(pair, cls)
        except MembershipError as e:
            report.record("closure", f"{pair}: {e}")
            continue
        if not image.in_pi(cls):
            report.record("closure", f"{pair} -> {image}")
            continue
        if phi(image, cls) != pair:
            report.record("involution", f"{pair} -> {image} -> {phi(image, cls)}")
        if image.total_size != pair.total_size:
            report.record("size", f"{pair} -> {image}")
        if image.total_length != pair.total_length:
            report.record("length", f"{pair} -> {image}")
        if pair == empty:
            if image != empty or image.weight != pair.weight:
                report.record("weight", f"{pair} -> {image}")
        elif image.weight != -pair.weight:
            report.record("weight", f"{pair} -> {image}")

        key = (pair.total_length, pair.total_size)
        for m in bounds:
            if pair.in_pi_m_star(m):
                if not image.in_pi_m_star(m):
                    report.record("restriction", f"m={m}: {pair} -> {image}")
                star_sums[m][key] += pair.weight
            elif pair.in_pi_m(m):
                rest_sums[m][key] += pair.weight

    for m in bounds:
        for (ell, n), total in sorted(star_sums[m].items()):
            if total:
                report.record("cancellation", f"m={m}: x^{ell} q^{n} sums to {total}")
        expected = series_P_le_m(SeriesRequest(cls, size_bound, size_bound, m - 1)).negate_x()
        for ell in range(size_bound + 1):
            for n in range(size_bound + 1):
                got = rest_sums[m].get((ell, n), 0)
                if got != expected.coefficient(ell, n):
                    report.record(
                        "boundary",
                        f"m={m}: x^{ell} q^{n} is {got}, expected {expected.coefficient(ell, n)}",
                    )
        # at x = 1 the whole of Pi_m sums to P_{<=m-1}(-1, q)
        specialized = signed_P_le(m - 1, cls, size_bound)
        for n in range(size_bound + 1):
            got = sum(
                total
                for sums in (star_sums[m], rest_sums[m])
                for (ell, size), total in sums.items()
                if size == n
            )
            if got != specialized[n]:
                report.record("specialization", f"m={m}: q^{n} is {got}, expected {specialized[n]}")

    if report.passed:
        logger.info(f"Involution verified on {report.pairs_checked} pairs ({cls}, B={size_bound})")
    else:
        logger.warning(f"Involution check failed for {cls}, B={size_bound}")
    return report
