"""
Generating functions for gap partitions and gap compositions, the counting
functions K and M, and the identities that tie them together.

P(x, q)     sum over gap partitions of x^length q^size
P_{<=m}     the same, restricted to largest part at most m
C(x, q)     sum over gap compositions, equal to 1 / P(-x, q)
C_{>=m}     compositions with first part at least m, equal to P_{<=m-1}(-x, q) / P(-x, q)
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import List, Optional

from gapseries.checks import IdentityCheck, check_series_equal, check_xq_equal
from gapseries.enumerate import GapClass, iter_gap_compositions, iter_gap_partitions
from gapseries.errors import MembershipError
from gapseries.qseries import (
    TruncatedSeries,
    XQSeries,
    neg_qpochhammer,
    qbinomial,
    qpochhammer,
    series_invert,
    xq_eval_x,
    xq_invert,
    xq_mul,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesRequest:
    cls: GapClass
    q_order: int
    x_order: int
    m: Optional[int] = None

    def __post_init__(self) -> None:
        if self.q_order < 0 or self.x_order < 0:
            raise MembershipError(
                f"truncation orders must be nonnegative, got N={self.q_order}, L={self.x_order}"
            )
        if self.m is not None and self.m < 0:
            raise MembershipError(f"bound m must be nonnegative, got {self.m}")

    @classmethod
    def full(cls, gap_class: GapClass, q_order: int, m: Optional[int] = None) -> "SeriesRequest":
        """A request whose x-order covers every length that fits below q^N."""
        return cls(gap_class, q_order, q_order // gap_class.s, m)

    def with_bound(self, m: int) -> "SeriesRequest":
        return replace(self, m=m)

    def require_bound(self) -> int:
        if self.m is None:
            raise MembershipError("this generating function needs the bound m")
        return self.m


def _base_exponent(ell: int, cls: GapClass) -> int:
    """l*s + C(l,2)*g, the size of the smallest gap partition with l parts."""
    return ell * cls.s + ell * (ell - 1) // 2 * cls.g


def _le_layer(ell: int, bound: int, cls: GapClass, order: int) -> TruncatedSeries:
    """The x^l layer of P_{<=bound}, for l >= 1."""
    exponent = _base_exponent(ell, cls)
    if exponent > order:
        return TruncatedSeries.zero(order)
    top = bound - cls.s + 1 - (ell - 1) * (cls.g - 1)
    return qbinomial(top, ell, order=order).shift(exponent)


def series_P(req: SeriesRequest) -> XQSeries:
    """P(x, q) = sum_l x^l q^(l s + C(l,2) g) / (q;q)_l."""
    N = req.q_order
    layers = []
    for ell in range(req.x_order + 1):
        exponent = _base_exponent(ell, req.cls)
        if exponent > N:
            layers.append(TruncatedSeries.zero(N))
            continue
        layers.append(series_invert(qpochhammer(ell, N)).shift(exponent))
    return XQSeries(tuple(layers), req.x_order, N)


def series_P_le_m(req: SeriesRequest) -> XQSeries:
    """P_{<=m}(x, q) = 1 + sum_{l>=1} x^l q^(l s + C(l,2) g) [m-s+1-(l-1)(g-1) choose l]_q."""
    m = req.require_bound()
    N = req.q_order
    layers = [TruncatedSeries.one(N)]
    for ell in range(1, req.x_order + 1):
        layers.append(_le_layer(ell, m, req.cls, N))
    return XQSeries(tuple(layers), req.x_order, N)


def series_C(req: SeriesRequest) -> XQSeries:
    """C(x, q) = 1 / P(-x, q)."""
    return xq_invert(series_P(req).negate_x())


def series_C_ge_m(req: SeriesRequest) -> XQSeries:
    """C_{>=m}(x, q) = P_{<=m-1}(-x, q) / P(-x, q), for m >= 1."""
    m = req.require_bound()
    if m < 1:
        raise MembershipError(f"C_(>=m) needs m >= 1, got {m}")
    numerator = series_P_le_m(req.with_bound(m - 1)).negate_x()
    return xq_mul(numerator, xq_invert(series_P(req).negate_x()))


@lru_cache(maxsize=4096)
def signed_P_le(bound: int, cls: GapClass, order: int) -> TruncatedSeries:
    """
    P_{<=bound}(-1, q) truncated at order.

    A negative bound leaves only the empty partition, so the result is 1.
    """
    total = TruncatedSeries.one(order)
    if bound < 0:
        return total
    ell = 1
    while _base_exponent(ell, cls) <= order:
        layer = _le_layer(ell, bound, cls, order)
        total = total - layer if ell % 2 else total + layer
        ell += 1
    return total


@lru_cache(maxsize=1024)
def K_table(n_max: int, m: int, cls: GapClass) -> tuple:
    """
    K(0..n_max, m) for the gap class, from one dynamic-programming pass.

    A state is (partial sum, last part); a next part w is admissible when
    w >= s, w >= last - (g - 1) and w <= m + partial sum.
    """
    ways = [defaultdict(int) for _ in range(n_max + 1)]
    # last part 0 marks the empty composition
    ways[0][0] = 1
    for total in range(n_max + 1):
        for last, count in ways[total].items():
            low = cls.s if last == 0 else max(cls.s, last - (cls.g - 1))
            high = min(m + total, n_max - total)
            for part in range(low, high + 1):
                ways[total + part][part] += count
    return tuple(sum(ways[n].values()) for n in range(n_max + 1))


def K(n: int, m: int, cls: GapClass) -> int:
    """The number of m-step compositions of n in the gap class."""
    if n < 0:
        return 0
    return K_table(n, m, cls)[n]


def M(n: int, m: int, cls: GapClass) -> int:
    """
    The signed count of gap partitions of n with largest part m.

    Each partition contributes (-1)^(length+1). Removing the largest part
    leaves a gap partition with largest part at most m - g, hence
    M(n, m) = [q^(n-m)] P_{<=m-g}(-1, q).
    """
    if n < 1 or m < 1:
        raise MembershipError(f"M(n, m) needs n, m >= 1, got n={n}, m={m}")
    if m < cls.s or n < m:
        return 0
    return signed_P_le(m - cls.g, cls, n - m)[n - m]


def M_column(m: int, n_max: int, cls: GapClass) -> List[int]:
    """[M(n, m) for n = 0..n_max], with 0 at n = 0."""
    values = [0] * (n_max + 1)
    if m < cls.s or n_max < m:
        return values
    series = signed_P_le(m - cls.g, cls, n_max - m)
    for n in range(m, n_max + 1):
        values[n] = series[n - m]
    return values


def M_by_enumeration(n: int, m: int, cls: GapClass) -> int:
    """The defining signed sum, taken over explicitly enumerated partitions."""
    return sum(
        (-1) ** (partition.length + 1)
        for partition in iter_gap_partitions(n, cls, max_part=m)
        if partition.last == m
    )


def K_identity_lhs(cls: GapClass, m: int, order: int) -> TruncatedSeries:
    """sum_{n>=0} K(n, m) q^n P_{<=n+m}(-1, q), truncated at order."""
    counts = K_table(order, m, cls)
    total = TruncatedSeries.zero(order)
    for n, count in enumerate(counts):
        if count:
            total = total + signed_P_le(n + m, cls, order).shift(n) * count
    return total


def verify_K_identity(
    cls: GapClass, m: int, order: int, corrupt: Optional[int] = None
) -> IdentityCheck:
    """
    Check sum_n K(n, m) q^n P_{<=n+m}(-1, q) = 1 through q^order.

    :param corrupt: Degree of a coefficient to perturb before comparing, for negative controls.
    """
    if m < 1:
        raise MembershipError(f"the K identity needs m >= 1, got {m}")
    lhs = K_identity_lhs(cls, m, order)
    if corrupt is not None:
        lhs = lhs.perturbed(corrupt)
    params = {"g": cls.g, "s": cls.s, "m": m, "N": order}
    return check_series_equal("kidentity", params, lhs, TruncatedSeries.one(order))


def verify_euler(m: int, order: int, corrupt: Optional[int] = None) -> List[IdentityCheck]:
    """
    Euler's two summations as specializations of P_{<=m}(-1, q).

    g=1, s=1 gives (q;q)_m and g=0, s=1 gives 1/(-q;q)_m.
    """
    checks = []
    sides = [
        ("euler-second", GapClass(1, 1), qpochhammer(m, order)),
        ("euler-first", GapClass(0, 1), series_invert(neg_qpochhammer(m, order))),
    ]
    for name, cls, rhs in sides:
        lhs = xq_eval_x(series_P_le_m(SeriesRequest.full(cls, order, m)), -1)
        if corrupt is not None:
            lhs = lhs.perturbed(corrupt)
        checks.append(check_series_equal(name, {"m": m, "N": order}, lhs, rhs))
    return checks


def verify_Gm(
    cls: GapClass, m: int, order: int, x_order: Optional[int] = None, corrupt: Optional[int] = None
) -> IdentityCheck:
    """Check P(-x, q) C_{>=m}(x, q) = P_{<=m-1}(-x, q) as a bivariate series."""
    if x_order is None:
        x_order = order // cls.s
    req = SeriesRequest(cls, order, x_order, m)
    lhs = xq_mul(series_P(req).negate_x(), series_C_ge_m(req))
    if corrupt is not None:
        layers = list(lhs.layers)
        layers[0] = layers[0].perturbed(corrupt)
        lhs = XQSeries(tuple(layers), lhs.x_order, lhs.q_order)
    rhs = series_P_le_m(req.with_bound(m - 1)).negate_x()
    params = {"g": cls.g, "s": cls.s, "m": m, "N": order, "L": x_order}
    return check_xq_equal("gm", params, lhs, rhs)


def _tally(counts: dict, ell: int, n: int) -> None:
    counts[(ell, n)] = counts.get((ell, n), 0) + 1


def verify_against_enumeration(
    cls: GapClass, n_max: int, l_max: int, m_max: int
) -> IdentityCheck:
    """
    Compare P, P_{<=m}, C and C_{>=m} coefficient by coefficient with explicit enumeration.

    Reports the first family, bound and cell that disagree.
    """
    params = {"g": cls.g, "s": cls.s, "n": n_max, "l": l_max, "m": m_max}
    p_counts, c_counts = {}, {}
    p_le_counts = {m: {} for m in range(m_max + 1)}
    c_ge_counts = {m: {} for m in range(1, m_max + 1)}
    for n in range(n_max + 1):
        for partition in iter_gap_partitions(n, cls):
            if partition.length > l_max:
                continue
            _tally(p_counts, partition.length, n)
            for m in range(m_max + 1):
                if not partition or partition.last <= m:
                    _tally(p_le_counts[m], partition.length, n)
        for composition in iter_gap_compositions(n, cls):
            if composition.length > l_max:
                continue
            _tally(c_counts, composition.length, n)
            for m in range(1, m_max + 1):
                if not composition or composition.first >= m:
                    _tally(c_ge_counts[m], composition.length, n)

    req = SeriesRequest(cls, n_max, l_max)
    families = [("P", series_P(req), p_counts), ("C", series_C(req), c_counts)]
    for m in range(m_max + 1):
        families.append((f"P<={m}", series_P_le_m(req.with_bound(m)), p_le_counts[m]))
    for m in range(1, m_max + 1):
        families.append((f"C>={m}", series_C_ge_m(req.with_bound(m)), c_ge_counts[m]))

    for label, series, counts in families:
        for ell in range(l_max + 1):
            for n in range(n_max + 1):
                expected = counts.get((ell, n), 0)
                got = series.coefficient(ell, n)
                if got != expected:
                    logger.warning(f"{label} disagrees with enumeration at x^{ell} q^{n} ({cls})")
                    return IdentityCheck(
                        "oracle",
                        params,
                        holds=False,
                        location=f"{label} x^{ell} q^{n}",
                        detail=f"enumeration {expected}, closed form {got}",
                    )
    return IdentityCheck("oracle", params)
