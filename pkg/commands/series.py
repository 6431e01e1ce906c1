"""
`series`: print the generating functions P, P_{<=m}, C and C_{>=m}.
"""

import json

from commands import CommandGroup, OutputFormat, join_values, to_bfile
from gapseries.enumerate import GapClass
from gapseries.errors import UsageError
from gapseries.genfun import SeriesRequest, series_C, series_C_ge_m, series_P, series_P_le_m
from gapseries.qseries import xq_eval_x

BUILDERS = {
    "P": series_P,
    "Ple": series_P_le_m,
    "C": series_C,
    "Cge": series_C_ge_m,
}


class Series(CommandGroup):
    name = "series"
    description = "Print a generating function, optionally with an integer substituted for x."

    def build(self, parser) -> None:
        parser.add_argument("which", choices=list(BUILDERS))
        parser.add_argument("--g", type=int, default=1)
        parser.add_argument("--s", type=int, default=1)
        parser.add_argument("--N", type=int, default=10, help="Truncation order in q.")
        parser.add_argument("--L", type=int, help="Truncation order in x (default N // s).")
        parser.add_argument("--m", type=int, help="The bound of Ple (largest part) or Cge (first part).")
        parser.add_argument("--at-x", type=int, dest="at_x", help="Substitute this integer for x.")
        parser.add_argument("--format", choices=OutputFormat.choices(), default="pretty")

    def handle(self, args) -> int:
        if args.which in ("Ple", "Cge") and args.m is None:
            raise UsageError(f"{args.which} needs the bound --m", "--m")
        if args.which == "Cge" and args.m < 1:
            raise UsageError("Cge needs --m >= 1", "--m")
        if args.N < 0:
            raise UsageError("--N must be nonnegative", "--N")
        cls = GapClass(args.g, args.s)
        full_order = args.N // cls.s
        x_order = args.L if args.L is not None else full_order
        # every layer above N // s is zero through q^N, so only a smaller L loses terms
        if args.at_x is not None and x_order < full_order:
            raise UsageError("--at-x needs --L >= N // s", "--L")
        req = SeriesRequest(cls, args.N, x_order, args.m)
        series = BUILDERS[args.which](req)
        fmt = OutputFormat(args.format)

        if args.at_x is not None:
            coeffs = xq_eval_x(series, args.at_x).coeffs
            if fmt is OutputFormat.JSON:
                self.emit(json.dumps(self._meta(args, x_order) | {"coeffs": list(coeffs)}))
            elif fmt is OutputFormat.CSV:
                self.emit(join_values(coeffs, ","))
            elif fmt is OutputFormat.BFILE:
                self.emit(to_bfile(coeffs))
            else:
                self.emit(join_values(coeffs))
            return 0

        layers = [layer.coeffs for layer in series.layers]
        if fmt is OutputFormat.BFILE:
            raise UsageError("bfile output needs a one-dimensional sequence; add --at-x", "--format")
        if fmt is OutputFormat.JSON:
            self.emit(json.dumps(self._meta(args, x_order) | {"layers": [list(c) for c in layers]}))
        elif fmt is OutputFormat.CSV:
            for coeffs in layers:
                self.emit(join_values(coeffs, ","))
        else:
            for ell, coeffs in enumerate(layers):
                self.emit(f"x^{ell}: {join_values(coeffs)}")
        return 0

    @staticmethod
    def _meta(args, x_order: int) -> dict:
        return {
            "which": args.which,
            "g": args.g,
            "s": args.s,
            "N": args.N,
            "L": x_order,
            "m": args.m,
            "at_x": args.at_x,
        }


def setup(host) -> None:
    host.add_group(Series(host))
