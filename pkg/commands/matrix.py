"""
`matrix`: dump mu, gamma or a product of gammas.
"""

from commands import CommandGroup, OutputFormat, parse_int_list
from gapseries.enumerate import GapClass
from gapseries.errors import UsageError
from gapseries.reciprocity import build_gamma, build_mu, gamma_product


class Matrix(CommandGroup):
    name = "matrix"
    description = "Print the matrices mu and gamma, or a product of gamma matrices."

    def build(self, parser) -> None:
        parser.add_argument("which", choices=["mu", "gamma", "product"])
        parser.add_argument(
            "--g", default="1", help="The gap bound; for product a comma-separated list such as 0,1."
        )
        parser.add_argument("--s", type=int, default=1)
        parser.add_argument("--dim", type=int, default=12)
        parser.add_argument("--format", choices=OutputFormat.choices(), default="pretty")

    def handle(self, args) -> int:
        """
        Build the requested triangle and print it.

        :param args: The parsed arguments.
        """
        fmt = OutputFormat(args.format)
        if fmt is OutputFormat.BFILE:
            raise UsageError("bfile output is only for one-dimensional sequences", "--format")
        if args.dim < 1:
            raise UsageError("--dim must be positive", "--dim")
        gs = parse_int_list(args.g, "--g")
        if args.which == "product":
            triangle = gamma_product([GapClass(g, args.s) for g in gs], args.dim)
            g_meta = gs
        else:
            if len(gs) != 1:
                raise UsageError(f"{args.which} takes a single --g", "--g")
            cls = GapClass(gs[0], args.s)
            triangle = build_mu(cls, args.dim) if args.which == "mu" else build_gamma(cls, args.dim)
            g_meta = gs[0]

        if fmt is OutputFormat.JSON:
            self.emit(triangle.to_json(g=g_meta, s=args.s, kind=args.which))
        elif fmt is OutputFormat.CSV:
            self.emit(triangle.to_csv().rstrip("\n"))
        else:
            self.emit(triangle.pretty())
        return 0


def setup(host) -> None:
    host.add_group(Matrix(host))
