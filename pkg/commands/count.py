"""
`count`: brute-force counts (or listings) of gap partitions and compositions.
"""

from commands import CommandGroup
from gapseries.enumerate import GapClass, iter_gap_compositions, iter_gap_partitions
from gapseries.errors import UsageError


class Count(CommandGroup):
    name = "count"
    description = "Count or list the gap partitions or gap compositions of n."

    def build(self, parser) -> None:
        parser.add_argument("kind", choices=["partitions", "compositions"])
        parser.add_argument("--n", type=int, required=True, help="The size.")
        parser.add_argument("--g", type=int, default=1, help="The gap bound.")
        parser.add_argument("--s", type=int, default=1, help="The minimum part.")
        parser.add_argument("--max-part", type=int, help="Partitions only: largest part at most this.")
        parser.add_argument("--min-first", type=int, help="Compositions only: first part at least this.")
        parser.add_argument("--m-step", type=int, help="Compositions only: keep m-step compositions.")
        parser.add_argument("--length", type=int, help="Exactly this many parts.")
        parser.add_argument("--list", action="store_true", help="Print the objects instead of the count.")

    def handle(self, args) -> int:
        """
        Count (or list) the objects of size n in the gap class.

        :param args: The parsed arguments.
        """
        if args.kind == "compositions" and args.max_part is not None:
            raise UsageError("--max-part only applies to partitions", "--max-part")
        if args.kind == "partitions":
            for flag, value in (("--min-first", args.min_first), ("--m-step", args.m_step)):
                if value is not None:
                    raise UsageError(f"{flag} only applies to compositions", flag)
        if args.n < 0:
            raise UsageError("--n must be nonnegative", "--n")
        cls = GapClass(args.g, args.s)
        if args.kind == "partitions":
            objects = iter_gap_partitions(args.n, cls, max_part=args.max_part, length=args.length)
        else:
            objects = iter_gap_compositions(
                args.n, cls, min_first=args.min_first, m_step=args.m_step, length=args.length
            )
        if args.list:
            for item in objects:
                self.emit(str(item))
        else:
            self.emit(str(sum(1 for _ in objects)))
        return 0


def setup(host) -> None:
    host.add_group(Count(host))
