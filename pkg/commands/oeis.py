"""
`oeis`: print a registered integer sequence as an OEIS b-file.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List

from commands import CommandGroup, to_bfile
from gapseries.enumerate import GapClass
from gapseries.errors import UsageError
from gapseries.genfun import K_table, SeriesRequest, series_C, series_P
from gapseries.qseries import series_mul, xq_eval_x


def composition_terms(cls: GapClass, last: int) -> List[int]:
    return list(xq_eval_x(series_C(SeriesRequest.full(cls, last)), 1).coeffs)


def partition_terms(cls: GapClass, last: int) -> List[int]:
    return list(xq_eval_x(series_P(SeriesRequest.full(cls, last)), 1).coeffs)


def overpartition_terms(last: int) -> List[int]:
    distinct = xq_eval_x(series_C(SeriesRequest.full(GapClass(0, 1), last)), 1)
    ordinary = xq_eval_x(series_C(SeriesRequest.full(GapClass(1, 1), last)), 1)
    return list(series_mul(distinct, ordinary).coeffs)


@dataclass(frozen=True)
class Generator:
    description: str
    terms: Callable[..., List[int]]
    needs_bound: bool = False


# Each generator returns the terms with index 0..last.
REGISTRY: Dict[str, Generator] = {
    "gap-compositions": Generator(
        "gap compositions of n in the class (g, s)",
        lambda args, last: composition_terms(GapClass(args.g, args.s), last),
    ),
    "gap-partitions": Generator(
        "gap partitions of n in the class (g, s)",
        lambda args, last: partition_terms(GapClass(args.g, args.s), last),
    ),
    "m-step": Generator(
        "m-step gap compositions of n, K(n, m)",
        lambda args, last: list(K_table(last, args.m, GapClass(args.g, args.s))),
        needs_bound=True,
    ),
    "partitions": Generator(
        "partitions of n, as gap compositions with g=1, s=1",
        lambda args, last: composition_terms(GapClass(1, 1), last),
    ),
    "distinct-partitions": Generator(
        "partitions of n into distinct parts, as gap compositions with g=0, s=1",
        lambda args, last: composition_terms(GapClass(0, 1), last),
    ),
    "overpartitions": Generator(
        "overpartitions of n, pairs of a distinct partition and a partition",
        lambda args, last: overpartition_terms(last),
    ),
}


class Oeis(CommandGroup):
    name = "oeis"
    description = "Print a registered sequence in b-file format."

    def build(self, parser) -> None:
        parser.add_argument("sequence", help=f"One of: {', '.join(REGISTRY)}.")
        parser.add_argument("--count", type=int, default=10, help="Number of terms.")
        parser.add_argument("--offset", type=int, default=0, help="Index of the first term.")
        parser.add_argument("--g", type=int, default=1)
        parser.add_argument("--s", type=int, default=1)
        parser.add_argument("--m", type=int, help="The step bound of m-step.")

    def handle(self, args) -> int:
        generator = REGISTRY.get(args.sequence)
        if generator is None:
            raise UsageError(
                f"unknown sequence {args.sequence!r}; choose from {', '.join(REGISTRY)}", "sequence"
            )
        if args.count < 1:
            raise UsageError("--count must be positive", "--count")
        if args.offset < 0:
            raise UsageError("--offset must be nonnegative", "--offset")
        if generator.needs_bound and (args.m is None or args.m < 0):
            raise UsageError(f"{args.sequence} needs a nonnegative --m", "--m")
        last = args.offset + args.count - 1
        terms = generator.terms(args, last)
        self.host.logger.debug(f"Generated {args.sequence} through index {last}")
        self.emit(to_bfile(terms[args.offset:], offset=args.offset))
        return 0


def setup(host) -> None:
    host.add_group(Oeis(host))
