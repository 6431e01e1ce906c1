"""
Result records shared by every verifier.

A failed check is a mathematical finding, not an exception: verifiers return
an IdentityCheck and the command host decides what to do with it.
"""

from dataclasses import dataclass, field
from typing import Optional

from gapseries.qseries import TruncatedSeries, XQSeries


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    params: dict = field(default_factory=dict)
    holds: bool = True
    location: Optional[str] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds

    @property
    def params_text(self) -> str:
        return " ".join(f"{key}={value}" for key, value in self.params.items())


def check_series_equal(
    name: str, params: dict, lhs: TruncatedSeries, rhs: TruncatedSeries
) -> IdentityCheck:
    """Compare two series coefficient by coefficient and report the lowest failing degree."""
    n = lhs.first_mismatch(rhs)
    if n is None:
        return IdentityCheck(name, params)
    return IdentityCheck(
        name,
        params,
        holds=False,
        location=f"q^{n}",
        detail=f"expected {rhs[n]}, got {lhs[n]}",
    )


def check_xq_equal(name: str, params: dict, lhs: XQSeries, rhs: XQSeries) -> IdentityCheck:
    mismatch = lhs.first_mismatch(rhs)
    if mismatch is None:
        return IdentityCheck(name, params)
    ell, n = mismatch
    return IdentityCheck(
        name,
        params,
        holds=False,
        location=f"x^{ell} q^{n}",
        detail=f"expected {rhs.coefficient(ell, n)}, got {lhs.coefficient(ell, n)}",
    )
