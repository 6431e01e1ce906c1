"""
`history`: list verification cells recorded with `verify --record`.
"""

import asyncio

from commands import CommandGroup
from gapseries.errors import UsageError


class History(CommandGroup):
    name = "history"
    description = "Show the most recently recorded verification results."

    def build(self, parser) -> None:
        parser.add_argument("--limit", type=int, default=20, help="Number of rows to show.")
        parser.add_argument("--suite", help="Only show rows of this suite.")

    async def fetch(self, limit: int, suite) -> list:
        ledger = await self.host.open_ledger()
        try:
            return await ledger.get_runs(limit=limit, suite=suite)
        finally:
            await ledger.connection.close()

    def handle(self, args) -> int:
        if args.limit < 1:
            raise UsageError("--limit must be positive", "--limit")
        rows = asyncio.run(self.fetch(args.limit, args.suite))
        if not rows:
            self.emit("No recorded runs.")
            return 0
        for run_id, batch, suite, params, passed, location, detail, created_at in rows:
            status = "PASS" if passed else "FAIL"
            line = f"#{run_id} {created_at} [{batch}] {status}  {suite:<11} {params}"
            if not passed:
                line += f"  at {location}: {detail}"
            self.emit(line)
        return 0


def setup(host) -> None:
    host.add_group(History(host))
