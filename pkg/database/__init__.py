"""
Run ledger for verification results.

Every recorded `verify` invocation is one batch; each cell of its pass/fail
table becomes one row of the `runs` table.
"""

import aiosqlite

from gapseries.checks import IdentityCheck


class RunLedger:
    def __init__(self, *, connection: aiosqlite.Connection) -> None:
        self.connection = connection

    async def add_run(self, batch: str, check: IdentityCheck) -> int:
        """
        This function will add one verification cell to the database.

        :param batch: The identifier shared by all cells of one invocation.
        :param check: The result of the cell.
        :return: The row ID of the stored cell.
        """
        cursor = await self.connection.execute(
            "INSERT INTO runs(batch, suite, params, passed, location, detail) VALUES (?, ?, ?, ?, ?, ?)",
            (
                batch,
                check.name,
                check.params_text,
                int(check.holds),
                check.location,
                check.detail,
            ),
        )
        await self.connection.commit()
        return cursor.lastrowid

    async def get_runs(self, limit: int = 20, suite: str = None) -> list:
        """
        This function will get the most recent recorded cells.

        :param limit: The maximum number of rows to return.
        :param suite: Only rows of this suite, if given.
        :return: A list of (id, batch, suite, params, passed, location, detail, created_at) rows, newest first.
        """
        query = "SELECT id, batch, suite, params, passed, location, detail, created_at FROM runs"
        arguments = []
        if suite is not None:
            query += " WHERE suite=?"
            arguments.append(suite)
        query += " ORDER BY id DESC LIMIT ?"
        arguments.append(limit)
        rows = await self.connection.execute(query, tuple(arguments))
        async with rows as cursor:
            result = await cursor.fetchall()
            return [tuple(row) for row in result]

    async def count_failures(self, batch: str) -> int:
        rows = await self.connection.execute(
            "SELECT COUNT(*) FROM runs WHERE batch=? AND passed=0", (batch,)
        )
        async with rows as cursor:
            result = await cursor.fetchone()
            return result[0] if result is not None else 0
