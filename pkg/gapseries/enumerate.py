"""
Brute-force enumeration of gap-constrained partitions and compositions.

Partitions are stored nondecreasing (smallest part first). The enumerators are
the ground truth every closed form is tested against, so they stay as direct
as possible: a recursive descent that picks parts left to right.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional

from gapseries.config import enumeration_limit
from gapseries.errors import EnumerationLimitError, MembershipError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GapClass:
    """A gap bound g and a minimum part s."""

    g: int
    s: int = 1

    def __post_init__(self) -> None:
        if self.g < 0:
            raise MembershipError(f"gap bound g must be nonnegative, got {self.g}")
        if self.s < 1:
            raise MembershipError(f"minimum part s must be positive, got {self.s}")

    def __str__(self) -> str:
        return f"g={self.g},s={self.s}"


@dataclass(frozen=True)
class Composition:
    parts: tuple = ()

    def __post_init__(self) -> None:
        if not isinstance(self.parts, tuple):
            object.__setattr__(self, "parts", tuple(self.parts))
        if any(part < 1 for part in self.parts):
            raise MembershipError(f"parts must be positive: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def first(self) -> Optional[int]:
        return self.parts[0] if self.parts else None

    @property
    def last(self) -> Optional[int]:
        return self.parts[-1] if self.parts else None

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(part) for part in self.parts) + ")"


@dataclass(frozen=True)
class Partition(Composition):
    """A composition whose parts are nondecreasing."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if any(a > b for a, b in zip(self.parts, self.parts[1:])):
            raise MembershipError(f"partition parts must be nondecreasing: {self.parts}")


def check_enumeration_limit(n: int) -> None:
    limit = enumeration_limit()
    if n > limit:
        raise EnumerationLimitError(
            f"refusing to enumerate objects of size {n}; GAPSERIES_ENUM_LIMIT is {limit}"
        )


def is_gap_partition(partition: Partition, cls: GapClass) -> bool:
    """Empty, or first part at least s and every consecutive difference at least g."""
    parts = partition.parts
    if not parts:
        return True
    if parts[0] < cls.s:
        return False
    return all(b - a >= cls.g for a, b in zip(parts, parts[1:]))


def is_gap_composition(composition: Composition, cls: GapClass) -> bool:
    """Every part at least s and every consecutive difference at least -(g-1)."""
    parts = composition.parts
    if any(part < cls.s for part in parts):
        return False
    return all(b - a >= 1 - cls.g for a, b in zip(parts, parts[1:]))


def is_m_step(composition: Composition, m: int) -> bool:
    """Every part is at most m plus the sum of the parts before it."""
    total = 0
    for part in composition.parts:
        if part > m + total:
            return False
        total += part
    return True


def iter_gap_partitions(
    n: int, cls: GapClass, max_part: Optional[int] = None, length: Optional[int] = None
) -> Iterator[Partition]:
    """
    Stream the partitions of n in the gap class, in lexicographic order.

    :param n: The size.
    :param cls: The gap class.
    :param max_part: Only partitions whose largest part is at most this.
    :param length: Only partitions with exactly this many parts.
    """
    check_enumeration_limit(n)
    top = n if max_part is None else min(n, max_part)

    def descend(remaining: int, low: int, prefix: list) -> Iterator[Partition]:
        if remaining == 0:
            if length is None or len(prefix) == length:
                yield Partition(tuple(prefix))
            return
        if length is not None and len(prefix) >= length:
            return
        for part in range(low, min(remaining, top) + 1):
            prefix.append(part)
            yield from descend(remaining - part, part + cls.g, prefix)
            prefix.pop()

    if n < 0:
        return
    yield from descend(n, cls.s, [])


def gap_partitions(
    n: int, cls: GapClass, max_part: Optional[int] = None, length: Optional[int] = None
) -> List[Partition]:
    return list(iter_gap_partitions(n, cls, max_part=max_part, length=length))


def iter_gap_compositions(
    n: int,
    cls: GapClass,
    min_first: Optional[int] = None,
    m_step: Optional[int] = None,
    length: Optional[int] = None,
) -> Iterator[Composition]:
    """
    Stream the compositions of n in the gap class, in lexicographic order.

    :param n: The size.
    :param cls: The gap class.
    :param min_first: Only compositions whose first part is at least this.
    :param m_step: Only m-step compositions for this m.
    :param length: Only compositions with exactly this many parts.
    """
    check_enumeration_limit(n)

    def descend(remaining: int, total: int, prefix: list) -> Iterator[Composition]:
        if remaining == 0:
            if length is None or len(prefix) == length:
                yield Composition(tuple(prefix))
            return
        if length is not None and len(prefix) >= length:
            return
        if prefix:
            low = max(cls.s, prefix[-1] - (cls.g - 1))
        else:
            low = cls.s if min_first is None else max(cls.s, min_first)
        high = remaining
        if m_step is not None:
            high = min(high, m_step + total)
        for part in range(low, high + 1):
            prefix.append(part)
            yield from descend(remaining - part, total + part, prefix)
            prefix.pop()

    if n < 0:
        return
    yield from descend(n, 0, [])


def gap_compositions(
    n: int,
    cls: GapClass,
    min_first: Optional[int] = None,
    m_step: Optional[int] = None,
    length: Optional[int] = None,
) -> List[Composition]:
    return list(
        iter_gap_compositions(n, cls, min_first=min_first, m_step=m_step, length=length)
    )


def count_gap_partitions(n: int, cls: GapClass, **filters) -> int:
    return sum(1 for _ in iter_gap_partitions(n, cls, **filters))


def count_gap_compositions(n: int, cls: GapClass, **filters) -> int:
    return sum(1 for _ in iter_gap_compositions(n, cls, **filters))
