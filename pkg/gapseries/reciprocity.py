"""
The lower-triangular matrices mu and gamma and their reciprocity.

    (mu)_{i,j}    = M(i+g+s-1, j+g+s-1)
    (gamma)_{i,j} = K(i-j, j+s-1)

Indices are 1-based everywhere in this module's interface; entry (i, j) is
stored at entries[i-1][j-1]. For lower-triangular matrices the leading N x N
blocks multiply independently of everything below and to the right, so a
product that is the identity at every finite truncation is the identity.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

from gapseries.checks import IdentityCheck
from gapseries.enumerate import GapClass, count_gap_compositions
from gapseries.errors import DimensionError, HypothesisError
from gapseries.genfun import K_table, M_column

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Triangle:
    dim: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DimensionError(f"dimension must be positive, got {self.dim}")
        rows = tuple(tuple(row) for row in self.entries)
        if len(rows) != self.dim or any(len(row) != self.dim for row in rows):
            raise DimensionError(f"expected a {self.dim}x{self.dim} array of entries")
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                if isinstance(value, bool) or not isinstance(value, int):
                    raise DimensionError(f"entry ({i + 1},{j + 1}) must be an integer, got {value!r}")
                if j > i and value:
                    raise DimensionError(
                        f"entry ({i + 1},{j + 1}) is above the diagonal but equals {value}"
                    )
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_function(cls, dim: int, entry) -> "Triangle":
        """Build from entry(i, j) evaluated on 1 <= j <= i <= dim."""
        return cls(
            dim,
            tuple(
                tuple(entry(i, j) if j <= i else 0 for j in range(1, dim + 1))
                for i in range(1, dim + 1)
            ),
        )

    @classmethod
    def identity(cls, dim: int) -> "Triangle":
        return cls.from_function(dim, lambda i, j: int(i == j))

    def __getitem__(self, index: tuple) -> int:
        i, j = index
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise DimensionError(f"index ({i},{j}) is outside a {self.dim}x{self.dim} triangle")
        return self.entries[i - 1][j - 1]

    def row(self, i: int) -> tuple:
        return self.entries[i - 1]

    def with_entry(self, i: int, j: int, value: int) -> "Triangle":
        rows = [list(row) for row in self.entries]
        rows[i - 1][j - 1] = value
        return Triangle(self.dim, tuple(tuple(row) for row in rows))

    def first_mismatch(self, other: "Triangle") -> Optional[tuple]:
        """The first (i, j) in row-major order where the triangles differ."""
        if other.dim != self.dim:
            raise DimensionError(f"cannot compare dimensions {self.dim} and {other.dim}")
        for i in range(1, self.dim + 1):
            for j in range(1, i + 1):
                if self[i, j] != other[i, j]:
                    return i, j
        return None

    # Serialization

    def to_csv(self) -> str:
        """Plain integers, row-major, no header."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerows(self.entries)
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Triangle":
        rows = [row for row in csv.reader(io.StringIO(text)) if row]
        if not rows:
            raise DimensionError("the CSV text holds no rows")
        try:
            entries = tuple(tuple(int(value) for value in row) for row in rows)
        except ValueError as e:
            raise DimensionError(f"every CSV cell must be an integer: {e}")
        return cls(len(rows), entries)

    def to_json(self, **meta) -> str:
        payload = dict(meta)
        payload["dim"] = self.dim
        payload["entries"] = [list(row) for row in self.entries]
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "Triangle":
        payload = json.loads(text)
        if not isinstance(payload, dict) or "dim" not in payload or "entries" not in payload:
            raise DimensionError("a matrix JSON object needs the keys dim and entries")
        dim, entries = payload["dim"], payload["entries"]
        if not isinstance(dim, int) or not isinstance(entries, list):
            raise DimensionError("dim must be an integer and entries a list of rows")
        if any(not isinstance(row, list) for row in entries):
            raise DimensionError("every row of entries must be a list")
        return cls(dim, tuple(tuple(row) for row in entries))

    def pretty(self) -> str:
        width = max(len(str(value)) for row in self.entries for value in row)
        return "\n".join(
            " ".join(str(value).rjust(width) for value in row) for row in self.entries
        )


def build_mu(cls: GapClass, dim: int) -> Triangle:
    """(mu)_{i,j} = M(i+g+s-1, j+g+s-1); needs g >= 1."""
    if cls.g < 1:
        raise HypothesisError(
            "mu is only defined for g >= 1: the reciprocity theorem assumes positive g and s"
        )
    shift = cls.g + cls.s - 1
    columns = {}
    for j in range(1, dim + 1):
        columns[j] = M_column(j + shift, dim + shift, cls)
    return Triangle.from_function(dim, lambda i, j: columns[j][i + shift])


def build_gamma(cls: GapClass, dim: int) -> Triangle:
    """(gamma)_{i,j} = K(i-j, j+s-1)."""
    columns = {}
    for j in range(1, dim + 1):
        columns[j] = K_table(dim - j, j + cls.s - 1, cls)
    return Triangle.from_function(dim, lambda i, j: columns[j][i - j])


def triangle_mul(a: Triangle, b: Triangle) -> Triangle:
    if a.dim != b.dim:
        raise DimensionError(f"cannot multiply triangles of dimensions {a.dim} and {b.dim}")

    rows = []
    for row in a.entries:
        rows.append(
            tuple(
                sum(row[k] * b.entries[k][j] for k in range(a.dim) if row[k])
                for j in range(a.dim)
            )
        )
    # Triangle rejects anything nonzero above the diagonal
    return Triangle(a.dim, tuple(rows))


def gamma_product(clss: Sequence[GapClass], dim: int) -> Triangle:
    """The product gamma_{g_1} ... gamma_{g_M}; the empty product is the identity."""
    if len({cls.s for cls in clss}) > 1:
        raise HypothesisError("every factor of a gamma product must share the same s")
    result = Triangle.identity(dim)
    for cls in clss:
        result = triangle_mul(result, build_gamma(cls, dim))
    return result


def _product_check(name: str, params: dict, product: Triangle, label: str) -> Optional[IdentityCheck]:
    mismatch = product.first_mismatch(Triangle.identity(product.dim))
    if mismatch is None:
        return None
    i, j = mismatch
    return IdentityCheck(
        name,
        params,
        holds=False,
        location=f"{label}({i},{j})",
        detail=f"expected {int(i == j)}, got {product[i, j]}",
    )


def check_inverse_pair(mu: Triangle, gamma: Triangle, params: Optional[dict] = None) -> IdentityCheck:
    """Check that mu.gamma and gamma.mu are both the identity."""
    params = dict(params or {})
    params.setdefault("dim", mu.dim)
    for label, product in (
        ("mu*gamma", triangle_mul(mu, gamma)),
        ("gamma*mu", triangle_mul(gamma, mu)),
    ):
        failure = _product_check("inverse", params, product, label)
        if failure is not None:
            logger.warning(f"Inverse check failed at {failure.location} ({failure.params_text})")
            return failure
    return IdentityCheck("inverse", params)


def check_inverse(cls: GapClass, dim: int, corrupt: Optional[tuple] = None) -> IdentityCheck:
    """
    Check that mu and gamma are mutual inverses on the dim x dim truncation.

    :param corrupt: A 1-based (i, j) cell of mu to perturb first, for negative controls.
    """
    mu = build_mu(cls, dim)
    if corrupt is not None:
        i, j = corrupt
        mu = mu.with_entry(i, j, mu[i, j] + 1)
    return check_inverse_pair(mu, build_gamma(cls, dim), {"g": cls.g, "s": cls.s, "dim": dim})


def composition_counts(g: int, s: int, k_max: int) -> List[int]:
    """Brute-force counts of gap compositions of k = 0..k_max."""
    cls = GapClass(g, s)
    return [count_gap_compositions(k, cls) for k in range(k_max + 1)]


def tuple_count(gs: Iterable[int], s: int, k: int) -> int:
    """
    The number of tuples of compositions, the j-th in the class (g_j, s), of total size k.

    Computed as the convolution of the per-class enumeration counts.
    """
    if k < 0:
        return 0
    totals = [1] + [0] * k
    for g in gs:
        counts = composition_counts(g, s, k)
        totals = [
            sum(totals[a] * counts[size - a] for a in range(size + 1)) for size in range(k + 1)
        ]
    return totals[k]


def overpartition_counts(k_max: int) -> List[int]:
    """Overpartitions as pairs (distinct partition, partition) of total size k."""
    return [tuple_count([0, 1], 1, k) for k in range(k_max + 1)]


def stable_rows(k: int, s: int, dim: int) -> range:
    """Rows n with n >= 2k - s + 1 whose column n - k lies inside the triangle."""
    return range(max(2 * k - s + 1, k + 1, 1), dim + 1)


def check_stabilization(gs: Sequence[int], s: int, k_max: int, dim: Optional[int] = None) -> IdentityCheck:
    """Check (gamma_{g_1} ... gamma_{g_M})_{n,n-k} = c(k) for every stable row n and k <= k_max."""
    if dim is None:
        dim = 2 * k_max + 2
    params = {"gs": ",".join(str(g) for g in gs), "s": s, "k": k_max, "dim": dim}
    product = gamma_product([GapClass(g, s) for g in gs], dim)
    for k in range(k_max + 1):
        expected = tuple_count(gs, s, k)
        for n in stable_rows(k, s, dim):
            if product[n, n - k] != expected:
                return IdentityCheck(
                    "gamma",
                    params,
                    holds=False,
                    location=f"({n},{n - k})",
                    detail=f"expected {expected}, got {product[n, n - k]}",
                )
    return IdentityCheck("gamma", params)
