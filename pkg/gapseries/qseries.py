"""
Exact truncated power series in q, and polynomials in x over them.

Coefficients are Python ints throughout. A TruncatedSeries knows its
coefficients for every degree up to `order` and nothing beyond; asking for a
higher coefficient is an error rather than a silent zero. Polynomials that are
known completely (Gaussian binomials, products of finitely many factors) carry
`exact=True` and may be lifted to any order.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from gapseries.config import qbinomial_cache_limit
from gapseries.errors import NotInvertibleError, TruncationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    order: int
    exact: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.order < 0:
            raise TruncationError(f"order must be nonnegative, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise TruncationError(
                f"a series of order {self.order} needs {self.order + 1} coefficients, got {len(self.coeffs)}"
            )

    # Constructors

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], order: int) -> "TruncatedSeries":
        """
        Build a series of the given order from leading coefficients.

        Missing coefficients are zero, extra ones are cut off.
        """
        values = list(coeffs)[: order + 1]
        values.extend([0] * (order + 1 - len(values)))
        return cls(tuple(values), order)

    @classmethod
    def polynomial(cls, coeffs: Iterable[int]) -> "TruncatedSeries":
        values = list(coeffs)
        while len(values) > 1 and values[-1] == 0:
            values.pop()
        if not values:
            values = [0]
        return cls(tuple(values), len(values) - 1, exact=True)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((0,) * (order + 1), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, k: int, order: int, c: int = 1) -> "TruncatedSeries":
        """c * q^k truncated at order."""
        values = [0] * (order + 1)
        if 0 <= k <= order:
            values[k] = c
        return cls(tuple(values), order)

    # Coefficient access

    def __getitem__(self, n: int) -> int:
        """
        The coefficient of q^n.

        Negative degrees have coefficient 0. Degrees above the order raise
        TruncationError unless the series is an exact polynomial.
        """
        if n < 0:
            return 0
        if n > self.order:
            if self.exact:
                return 0
            raise TruncationError(
                f"coefficient of q^{n} requested from a series truncated at order {self.order}"
            )
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        for n in range(self.order, -1, -1):
            if self.coeffs[n]:
                return n
        return -1

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def at_one(self) -> int:
        """Evaluate an exact polynomial at q = 1."""
        if not self.exact:
            raise TruncationError("only exact polynomials can be evaluated at q = 1")
        return sum(self.coeffs)

    def first_mismatch(self, other: "TruncatedSeries") -> Optional[int]:
        """The lowest degree where the two series differ, or None."""
        order = _common_order(self, other)
        for n in range(order + 1):
            if self[n] != other[n]:
                return n
        return None

    # Reshaping

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            if self.exact:
                return self.lift(order)
            raise TruncationError(
                f"cannot extend a series of order {self.order} to order {order}"
            )
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def lift(self, order: int) -> "TruncatedSeries":
        """Bring the series to the given order, padding only when it is exact."""
        if order <= self.order:
            return self.truncate(order)
        if not self.exact:
            raise TruncationError(
                f"cannot extend a series of order {self.order} to order {order}"
            )
        return TruncatedSeries(self.coeffs + (0,) * (order - self.order), order)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k (k >= 0)."""
        if k < 0:
            raise TruncationError(f"cannot shift by a negative power q^{k}")
        if self.exact:
            return TruncatedSeries((0,) * k + self.coeffs, self.order + k, exact=True)
        if k > self.order:
            return TruncatedSeries.zero(self.order)
        return TruncatedSeries((0,) * k + self.coeffs[: self.order + 1 - k], self.order)

    def perturbed(self, n: int, delta: int = 1) -> "TruncatedSeries":
        values = list(self.coeffs)
        values[n] += delta
        return TruncatedSeries(tuple(values), self.order, exact=self.exact)

    # Arithmetic

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order, exact=self.exact)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.exact and other.exact:
            order = max(self.order, other.order)
            return TruncatedSeries.polynomial(self[n] + other[n] for n in range(order + 1))
        order = _common_order(self, other)
        return TruncatedSeries(tuple(self[n] + other[n] for n in range(order + 1)), order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["TruncatedSeries", int]) -> "TruncatedSeries":
        if isinstance(other, int):
            return TruncatedSeries(tuple(other * c for c in self.coeffs), self.order, exact=self.exact)
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return NotImplemented

    def __rmul__(self, other: int) -> "TruncatedSeries":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coeffs)


def _common_order(*series: TruncatedSeries) -> int:
    """
    The order a combination of the given series is known to.

    Exact polynomials are known at every degree, so they only bound the result
    when every operand is exact.
    """
    truncated = [s.order for s in series if not s.exact]
    if truncated:
        return min(truncated)
    return max(s.order for s in series)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller order."""
    if a.exact and b.exact:
        order = a.order + b.order
    else:
        order = _common_order(a, b)
    out = [0] * (order + 1)
    right = b.coeffs
    for i, ai in enumerate(a.coeffs[: order + 1]):
        if not ai:
            continue
        for j in range(min(order - i, len(right) - 1) + 1):
            bj = right[j]
            if bj:
                out[i + j] += ai * bj
    if a.exact and b.exact:
        return TruncatedSeries.polynomial(out)
    return TruncatedSeries(tuple(out), order)


def series_invert(a: TruncatedSeries, order: Optional[int] = None) -> TruncatedSeries:
    """
    The multiplicative inverse of a series whose constant term is 1 or -1.

    :param a: The series to invert.
    :param order: Truncation order of the result. Defaults to the order of `a`;
        a larger order is only allowed when `a` is an exact polynomial.
    """
    if order is None:
        order = a.order
    a = a.lift(order)
    a0 = a.coeffs[0]
    if a0 not in (1, -1):
        raise NotInvertibleError(
            f"constant coefficient {a0} is not invertible over the integers"
        )
    b = [0] * (order + 1)
    b[0] = a0
    for n in range(1, order + 1):
        total = 0
        for k in range(1, n + 1):
            ak = a.coeffs[k]
            if ak:
                total += ak * b[n - k]
        b[n] = -a0 * total
    return TruncatedSeries(tuple(b), order)


def qpochhammer(n: int, order: int) -> TruncatedSeries:
    """(q;q)_n = (1-q)(1-q^2)...(1-q^n), truncated at order."""
    values = [0] * (order + 1)
    values[0] = 1
    for k in range(1, min(n, order) + 1):
        for d in range(order, k - 1, -1):
            values[d] -= values[d - k]
    return TruncatedSeries(tuple(values), order)


def neg_qpochhammer(n: int, order: int) -> TruncatedSeries:
    """(-q;q)_n = (1+q)(1+q^2)...(1+q^n), truncated at order."""
    values = [0] * (order + 1)
    values[0] = 1
    for k in range(1, min(n, order) + 1):
        for d in range(order, k - 1, -1):
            values[d] += values[d - k]
    return TruncatedSeries(tuple(values), order)


class _GaussianTable:
    """
    Rows of Gaussian binomials built with [A,B] = [A-1,B-1] + q^B [A-1,B].

    With an order the rows are kept truncated at it; without one they are the
    exact polynomials. Rows up to GAPSERIES_QBINOMIAL_MAX are memoized.
    """

    def __init__(self, order: Optional[int]) -> None:
        self.order = order
        self.rows = [((1,),)]
        self._lock = threading.Lock()

    def _next_row(self, prev: Sequence[tuple]) -> tuple:
        A = len(prev)
        row = [(1,)]
        for B in range(1, A):
            left = prev[B - 1]
            right = prev[B]
            size = max(len(left), B + len(right))
            if self.order is not None:
                size = min(size, self.order + 1)
            values = list(left[:size]) + [0] * max(0, size - len(left))
            for j, c in enumerate(right):
                if B + j >= size:
                    break
                values[B + j] += c
            row.append(tuple(values))
        row.append((1,))
        return tuple(row)

    def row(self, A: int) -> tuple:
        limit = qbinomial_cache_limit()
        with self._lock:
            while len(self.rows) <= min(A, limit):
                self.rows.append(self._next_row(self.rows[-1]))
            if A < len(self.rows):
                return self.rows[A]
            current = self.rows[-1]
            start = len(self.rows) - 1
        logger.debug(f"Gaussian binomial row {A} is above the memo limit {limit}")
        for _ in range(A - start):
            current = self._next_row(current)
        return current


_tables = {}
_tables_lock = threading.Lock()


def _gaussian_table(order: Optional[int]) -> _GaussianTable:
    with _tables_lock:
        table = _tables.get(order)
        if table is None:
            table = _tables[order] = _GaussianTable(order)
        return table


def qbinomial(A: int, B: int, order: Optional[int] = None) -> TruncatedSeries:
    """
    The Gaussian binomial coefficient [A choose B]_q.

    Returns 0 when B < 0 or B > A. Without `order` the result is the exact
    polynomial of degree B(A-B); with it, the series truncated at `order`.
    """
    if B < 0 or A < 0 or B > A:
        if order is None:
            return TruncatedSeries.polynomial([0])
        return TruncatedSeries.zero(order)
    coeffs = _gaussian_table(order).row(A)[B]
    if order is None:
        return TruncatedSeries(coeffs, len(coeffs) - 1, exact=True)
    return TruncatedSeries.from_coeffs(coeffs, order)


@dataclass(frozen=True)
class XQSeries:
    """
    A polynomial in x truncated at x_order whose coefficients are series in q.

    layers[l] is the coefficient of x^l; every layer has order q_order.
    """

    layers: tuple
    x_order: int
    q_order: int

    def __post_init__(self) -> None:
        if not isinstance(self.layers, tuple):
            object.__setattr__(self, "layers", tuple(self.layers))
        if len(self.layers) != self.x_order + 1:
            raise TruncationError(
                f"x-order {self.x_order} needs {self.x_order + 1} layers, got {len(self.layers)}"
            )
        for index, layer in enumerate(self.layers):
            if layer.order != self.q_order:
                raise TruncationError(
                    f"layer x^{index} has order {layer.order}, expected {self.q_order}"
                )

    @classmethod
    def from_layers(cls, layers: Iterable[TruncatedSeries], x_order: int, q_order: int) -> "XQSeries":
        """Lift or truncate the given layers to (x_order, q_order), padding with zeros."""
        lifted = [layer.lift(q_order) for layer in list(layers)[: x_order + 1]]
        lifted.extend(TruncatedSeries.zero(q_order) for _ in range(x_order + 1 - len(lifted)))
        return cls(tuple(lifted), x_order, q_order)

    @classmethod
    def one(cls, x_order: int, q_order: int) -> "XQSeries":
        return cls.from_layers([TruncatedSeries.one(q_order)], x_order, q_order)

    def coefficient(self, ell: int, n: int) -> int:
        """The coefficient of x^ell q^n."""
        if ell < 0 or n < 0:
            return 0
        if ell > self.x_order:
            raise TruncationError(
                f"coefficient of x^{ell} requested from a series truncated at x-order {self.x_order}"
            )
        return self.layers[ell][n]

    def negate_x(self) -> "XQSeries":
        """Substitute x -> -x."""
        return XQSeries(
            tuple(-layer if ell % 2 else layer for ell, layer in enumerate(self.layers)),
            self.x_order,
            self.q_order,
        )

    def first_mismatch(self, other: "XQSeries") -> Optional[tuple]:
        """The first (ell, n) where the two series differ, or None."""
        for ell in range(min(self.x_order, other.x_order) + 1):
            n = self.layers[ell].first_mismatch(other.layers[ell])
            if n is not None:
                return ell, n
        return None

    def __add__(self, other: "XQSeries") -> "XQSeries":
        x_order = min(self.x_order, other.x_order)
        q_order = min(self.q_order, other.q_order)
        return XQSeries(
            tuple(
                (self.layers[ell] + other.layers[ell]).truncate(q_order)
                for ell in range(x_order + 1)
            ),
            x_order,
            q_order,
        )

    def __neg__(self) -> "XQSeries":
        return XQSeries(tuple(-layer for layer in self.layers), self.x_order, self.q_order)

    def __sub__(self, other: "XQSeries") -> "XQSeries":
        return self + (-other)


def xq_mul(a: XQSeries, b: XQSeries) -> XQSeries:
    x_order = min(a.x_order, b.x_order)
    q_order = min(a.q_order, b.q_order)
    layers = []
    for ell in range(x_order + 1):
        total = TruncatedSeries.zero(q_order)
        for i in range(ell + 1):
            total = total + series_mul(a.layers[i], b.layers[ell - i])
        layers.append(total)
    return XQSeries(tuple(layers), x_order, q_order)


def xq_invert(a: XQSeries) -> XQSeries:
    """
    The inverse of a bivariate series whose x^0 layer has constant term +-1.

    Layer by layer: b_0 = 1/a_0 and b_l = -(1/a_0) * sum_{k=1..l} a_k b_{l-k}.
    """
    inverse0 = series_invert(a.layers[0])
    layers = [inverse0]
    for ell in range(1, a.x_order + 1):
        total = TruncatedSeries.zero(a.q_order)
        for k in range(1, ell + 1):
            total = total + series_mul(a.layers[k], layers[ell - k])
        layers.append(-series_mul(inverse0, total))
    return XQSeries(tuple(layers), a.x_order, a.q_order)


def xq_eval_x(a: XQSeries, x0: int) -> TruncatedSeries:
    """
    Substitute the integer x0 for x.

    The result is the full specialization only when the layers above x_order
    vanish up to q_order; the generating-function builders size x_order so.
    """
    total = TruncatedSeries.zero(a.q_order)
    power = 1
    for layer in a.layers:
        if power:
            total = total + layer * power
        power *= x0
    return total
