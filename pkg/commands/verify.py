"""
`verify`: run the identity suites and print a pass/fail table.

Every suite is a list of cells; a cell calls one verifier from gapseries and
yields IdentityCheck records. No identity is decided here.
"""

import asyncio
import functools
import json
import time
import uuid
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from commands import CommandGroup, parse_int_list
from gapseries import config
from gapseries.checks import IdentityCheck
from gapseries.enumerate import GapClass
from gapseries.errors import UsageError
from gapseries.genfun import verify_against_enumeration, verify_euler, verify_Gm, verify_K_identity
from gapseries.involution import verify_involution
from gapseries.reciprocity import (
    Triangle,
    build_gamma,
    build_mu,
    check_inverse,
    check_inverse_pair,
    check_stabilization,
)

SUITES = ["inverse", "kidentity", "gm", "euler", "involution", "oracle", "gamma"]

# Ranges used when a flag is not given, per suite.
DEFAULTS = {
    "inverse": {"g": "1-4", "s": "1-3", "dim": 30},
    "kidentity": {"g": "0-4", "s": "1-3", "m": "1-8", "N": 40},
    "gm": {"g": "0-4", "s": "1-3", "m": "1-8", "N": 16},
    "euler": {"m": "1-12", "N": 40},
    "involution": {"g": "0-3", "s": "1-2", "bound": 14},
    "oracle": {"g": "0-3", "s": "1-2", "N": 16, "L": 6, "m": 6},
    "gamma": {"g": "0-4", "s": "1-3", "k": 8},
}


@dataclass
class Cell:
    suite: str
    func: Callable
    kwargs: dict = field(default_factory=dict)

    def call(self) -> functools.partial:
        return functools.partial(self.func, **self.kwargs)


def _as_list(result) -> List[IdentityCheck]:
    if isinstance(result, IdentityCheck):
        return [result]
    return list(result)


def involution_cell(g: int, s: int, bound: int) -> IdentityCheck:
    return verify_involution(GapClass(g, s), bound).to_check()


def inverse_cell(g: int, s: int, dim: int, corrupt: Optional[tuple] = None) -> IdentityCheck:
    return check_inverse(GapClass(g, s), dim, corrupt=corrupt)


def kidentity_cell(g: int, s: int, m: int, N: int, corrupt: Optional[int] = None) -> IdentityCheck:
    return verify_K_identity(GapClass(g, s), m, N, corrupt=corrupt)


def gm_cell(g: int, s: int, m: int, N: int, corrupt: Optional[int] = None) -> IdentityCheck:
    return verify_Gm(GapClass(g, s), m, N, corrupt=corrupt)


def oracle_cell(g: int, s: int, N: int, L: int, m: int) -> IdentityCheck:
    return verify_against_enumeration(GapClass(g, s), N, L, m)


def gamma_cell(gs: tuple, s: int, k: int) -> IdentityCheck:
    return check_stabilization(list(gs), s, k)


class Verify(CommandGroup):
    name = "verify"
    description = "Machine-check the identities over ranges of parameters."

    def build(self, parser) -> None:
        parser.add_argument("suite", choices=SUITES + ["all"])
        parser.add_argument("--g", help="Gap bounds, e.g. 2, 0,1 or 1-4.")
        parser.add_argument("--s", help="Minimum parts, e.g. 1 or 1-3.")
        parser.add_argument("--m", help="Bounds m for kidentity, gm and euler; the largest m for oracle.")
        parser.add_argument("--N", type=int, help="Truncation order in q.")
        parser.add_argument("--L", type=int, help="Largest length for oracle.")
        parser.add_argument("--dim", type=int, help="Matrix dimension for inverse.")
        parser.add_argument("--bound", type=int, help="Total size bound for involution.")
        parser.add_argument("--k", type=int, help="Largest offset k for gamma.")
        parser.add_argument(
            "--from-file",
            action="append",
            dest="from_file",
            help="inverse: read mu and/or gamma from a JSON or CSV matrix file (repeatable).",
        )
        parser.add_argument("--kind", choices=["mu", "gamma"], help="The matrix kind of a CSV file.")
        parser.add_argument(
            "--corrupt",
            help="Negative control: perturb mu cell I,J (inverse) or coefficient N (series suites).",
        )
        parser.add_argument("--record", action="store_true", help="Store the results in the run ledger.")
        parser.add_argument("--workers", type=int, help="Process workers (default GAPSERIES_WORKERS).")

    def _option(self, args, suite: str, name: str):
        value = getattr(args, name)
        return value if value is not None else DEFAULTS[suite][name]

    def _ints(self, args, suite: str, name: str) -> List[int]:
        value = self._option(args, suite, name)
        return parse_int_list(str(value), f"--{name}")

    def _corruption(self, args, suite: str):
        if args.corrupt is None:
            return None
        if args.suite == "all":
            raise UsageError("--corrupt needs a single suite", "--corrupt")
        if suite == "inverse":
            cell = parse_int_list(args.corrupt, "--corrupt")
            if len(cell) != 2:
                raise UsageError("--corrupt for inverse takes a cell I,J", "--corrupt")
            i, j = cell
            dim = self._option(args, suite, "dim")
            if not 1 <= j <= i <= dim:
                raise UsageError(f"--corrupt cell ({i},{j}) is not in the lower triangle of dimension {dim}", "--corrupt")
            return i, j
        if suite in ("kidentity", "gm", "euler"):
            degree = parse_int_list(args.corrupt, "--corrupt")
            N = self._option(args, suite, "N")
            if len(degree) != 1 or not 0 <= degree[0] <= N:
                raise UsageError(f"--corrupt for {suite} takes one degree between 0 and {N}", "--corrupt")
            return degree[0]
        raise UsageError(f"--corrupt is not supported by the {suite} suite", "--corrupt")

    def cells(self, args, suite: str) -> List[Cell]:
        """
        Expand a suite and the given ranges into cells.

        :param args: The parsed arguments.
        :param suite: One entry of SUITES.
        """
        corrupt = self._corruption(args, suite)
        cells = []
        if suite == "inverse":
            dim = self._option(args, suite, "dim")
            for g in self._ints(args, suite, "g"):
                for s in self._ints(args, suite, "s"):
                    cells.append(Cell(suite, inverse_cell, {"g": g, "s": s, "dim": dim, "corrupt": corrupt}))
        elif suite in ("kidentity", "gm"):
            func = kidentity_cell if suite == "kidentity" else gm_cell
            N = self._option(args, suite, "N")
            for g in self._ints(args, suite, "g"):
                for s in self._ints(args, suite, "s"):
                    for m in self._ints(args, suite, "m"):
                        if m < 1:
                            raise UsageError(f"{suite} needs m >= 1", "--m")
                        cells.append(Cell(suite, func, {"g": g, "s": s, "m": m, "N": N, "corrupt": corrupt}))
        elif suite == "euler":
            N = self._option(args, suite, "N")
            for m in self._ints(args, suite, "m"):
                cells.append(Cell(suite, verify_euler, {"m": m, "order": N, "corrupt": corrupt}))
        elif suite == "involution":
            bound = self._option(args, suite, "bound")
            for g in self._ints(args, suite, "g"):
                for s in self._ints(args, suite, "s"):
                    cells.append(Cell(suite, involution_cell, {"g": g, "s": s, "bound": bound}))
        elif suite == "oracle":
            N, L = self._option(args, suite, "N"), self._option(args, suite, "L")
            m = max(self._ints(args, suite, "m"))
            for g in self._ints(args, suite, "g"):
                for s in self._ints(args, suite, "s"):
                    cells.append(Cell(suite, oracle_cell, {"g": g, "s": s, "N": N, "L": L, "m": m}))
        elif suite == "gamma":
            k = self._option(args, suite, "k")
            gs = self._ints(args, suite, "g")
            for s in self._ints(args, suite, "s"):
                for g in gs:
                    cells.append(Cell(suite, gamma_cell, {"gs": (g,), "s": s, "k": k}))
                if args.g is None:
                    # the overpartition products, in both orders
                    for pair in ((0, 1), (1, 0)):
                        cells.append(Cell(suite, gamma_cell, {"gs": pair, "s": s, "k": k}))
        return cells

    @staticmethod
    def _read_matrix(path: str, kind: Optional[str]) -> Tuple[Optional[str], Triangle, dict]:
        """
        Read one matrix file, JSON when it starts with `{` and CSV otherwise.

        :return: The kind (from the file, else the given one), the triangle and the JSON metadata.
        """
        try:
            with open(path, encoding="utf-8") as file:
                text = file.read()
            if text.lstrip().startswith("{"):
                triangle = Triangle.from_json(text)
                payload = json.loads(text)
                return payload.get("kind", kind), triangle, payload
            return kind, Triangle.from_csv(text), {}
        except (OSError, ValueError) as e:
            # JSONDecodeError and DimensionError are both ValueErrors
            raise UsageError(f"--from-file cannot read {path}: {e}", "--from-file")

    def file_checks(self, args) -> List[IdentityCheck]:
        """Run the inverse check on matrices read from files; the missing partner is built in memory."""
        if args.suite != "inverse":
            raise UsageError("--from-file only applies to the inverse suite", "--from-file")
        if args.corrupt is not None:
            raise UsageError("--corrupt cannot be combined with --from-file; edit the file instead", "--corrupt")
        matrices, meta = {}, {}
        for path in args.from_file:
            kind, triangle, payload = self._read_matrix(path, args.kind)
            if kind not in ("mu", "gamma"):
                raise UsageError(f"cannot tell whether {path} holds mu or gamma; pass --kind", "--kind")
            matrices[kind] = triangle
            for name in ("g", "s"):
                value = payload.get(name)
                if value is None:
                    continue
                if isinstance(value, bool) or not isinstance(value, int):
                    raise UsageError(
                        f"--from-file cannot read {path}: {name} must be an integer, got {value!r}", "--from-file"
                    )
                meta.setdefault(name, value)
        for name in ("g", "s"):
            if meta.get(name) is None:
                value = getattr(args, name)
                if value is None:
                    raise UsageError(f"--{name} is needed to rebuild the partner matrix", f"--{name}")
                meta[name] = parse_int_list(value, f"--{name}")[0]
        cls = GapClass(meta["g"], meta["s"])
        dim = next(iter(matrices.values())).dim
        mu = matrices.get("mu") or build_mu(cls, dim)
        gamma = matrices.get("gamma") or build_gamma(cls, dim)
        params = {"g": cls.g, "s": cls.s, "dim": dim, "source": ",".join(args.from_file)}
        return [check_inverse_pair(mu, gamma, params)]

    async def run_cells(self, cells: List[Cell], workers: int) -> List[IdentityCheck]:
        """
        Run the cells, in a process pool when workers > 1.

        Results come back in cell order whatever order the workers finish in.
        """
        if workers <= 1:
            results = [cell.call()() for cell in cells]
        else:
            loop = asyncio.get_running_loop()
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = await asyncio.gather(
                    *(loop.run_in_executor(pool, cell.call()) for cell in cells)
                )
        checks = []
        for result in results:
            checks.extend(_as_list(result))
        return checks

    async def record(self, checks: List[IdentityCheck]) -> str:
        batch = uuid.uuid4().hex[:12]
        ledger = await self.host.open_ledger()
        try:
            for check in checks:
                await ledger.add_run(batch, check)
            failures = await ledger.count_failures(batch)
            if failures:
                self.host.logger.warning(f"Batch {batch} recorded {failures} failed cell(s)")
        finally:
            await ledger.connection.close()
        return batch

    def handle(self, args) -> int:
        """
        Run the selected suite(s) and print one row per check.

        :param args: The parsed arguments.
        :return: 0 when every check passes, 1 otherwise.
        """
        if args.from_file:
            checks = self.file_checks(args)
        else:
            suites = SUITES if args.suite == "all" else [args.suite]
            cells = []
            for suite in suites:
                cells.extend(self.cells(args, suite))
            workers = args.workers if args.workers is not None else config.worker_count()
            self.host.logger.info(f"Running {len(cells)} cells with {workers} worker(s)")
            started = time.perf_counter()
            checks = asyncio.run(self.run_cells(cells, workers))
            self.host.logger.info(f"Finished {args.suite} in {time.perf_counter() - started:.2f}s")

        failures = 0
        for check in checks:
            if check.holds:
                self.emit(f"PASS  {check.name:<11} {check.params_text}")
            else:
                failures += 1
                self.emit(f"FAIL  {check.name:<11} {check.params_text}  at {check.location}: {check.detail}")
        self.emit(f"{len(checks) - failures}/{len(checks)} checks passed")

        if args.record:
            batch = asyncio.run(self.record(checks))
            self.host.logger.info(f"Recorded {len(checks)} results as batch {batch}")
        return 0 if failures == 0 else 1


def setup(host) -> None:
    host.add_group(Verify(host))
