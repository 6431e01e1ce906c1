"""
gapbench: the command-line host for gapseries.

Loads the environment, sets up logging, discovers the command groups in
`commands/` and maps failures onto the exit-code contract:
0 every check passed, 1 an identity was violated, 2 usage error.
"""

import argparse
import importlib
import logging
import os
import platform
import sys

import aiosqlite
from dotenv import load_dotenv

from database import RunLedger
from gapseries import __version__, config
from gapseries.errors import ConfigurationError, GapSeriesError, HypothesisError, UsageError

load_dotenv()

EXIT_OK = 0
EXIT_IDENTITY_FAILED = 1
EXIT_USAGE = 2


class LoggingFormatter(logging.Formatter):
    # Colors
    black = "\x1b[30m"
    red = "\x1b[31m"
    green = "\x1b[32m"
    yellow = "\x1b[33m"
    blue = "\x1b[34m"
    gray = "\x1b[38m"
    # Styles
    reset = "\x1b[0m"
    bold = "\x1b[1m"

    COLORS = {
        logging.DEBUG: gray + bold,
        logging.INFO: blue + bold,
        logging.WARNING: yellow + bold,
        logging.ERROR: red,
        logging.CRITICAL: red + bold,
    }

    def format(self, record):
        log_color = self.COLORS[record.levelno]
        format = "(black){asctime}(reset) (levelcolor){levelname:<8}(reset) (green){name}(reset) {message}"
        format = format.replace("(black)", self.black + self.bold)
        format = format.replace("(reset)", self.reset)
        format = format.replace("(levelcolor)", log_color)
        format = format.replace("(green)", self.green + self.bold)
        formatter = logging.Formatter(format, "%Y-%m-%d %H:%M:%S", style="{")
        return formatter.format(record)


def setup_logger() -> logging.Logger:
    """
    Attach the console and file handlers to the package logger.

    Library modules log through children of the `gapseries` logger, so they
    share these handlers. The console handler writes to stderr, which keeps
    command output on stdout byte-identical between runs.
    """
    logger = logging.getLogger("gapseries")
    logger.setLevel(config.log_level())
    if logger.handlers:
        return logger

    log_directory = os.path.dirname(os.path.abspath(config.log_file()))
    os.makedirs(log_directory, exist_ok=True)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(LoggingFormatter())
    file_handler = logging.FileHandler(filename=config.log_file(), encoding="utf-8", mode="w")
    file_handler_formatter = logging.Formatter(
        "[{asctime}] [{levelname:<8}] {name}: {message}", "%Y-%m-%d %H:%M:%S", style="{"
    )
    file_handler.setFormatter(file_handler_formatter)

    logger.addHandler(console_handler)
    logger.addHandler(file_handler)
    return logger


class GapBench:
    def __init__(self, out=None, err=None) -> None:
        """
        This creates the host every command group hangs off.

        Command groups reach shared state through `self.host`:
        - self.host.logger for diagnostics
        - self.host.emit(...) for results
        - self.host.open_ledger() for the run ledger
        """
        self.logger = logging.getLogger("gapseries")
        self.out = out if out is not None else sys.stdout
        self.err = err if err is not None else sys.stderr
        self.database_path = config.database_path()
        self.groups = {}
        self.failed_groups = []
        self.parser = argparse.ArgumentParser(
            prog="gapbench",
            description="Exact generating functions, counts and reciprocal matrices for gap partitions and compositions.",
        )
        self.parser.add_argument("--version", action="version", version=f"gapbench {__version__}")
        self.subparsers = self.parser.add_subparsers(dest="command", required=True)

    def add_group(self, group) -> None:
        group.register(self.subparsers)
        self.groups[group.name] = group

    def load_commands(self) -> None:
        """
        Import every module in `commands/` and let it register its group.
        """
        directory = f"{os.path.realpath(os.path.dirname(__file__))}/commands"
        for file in sorted(os.listdir(directory)):
            if file.endswith(".py") and not file.startswith("_"):
                extension = file[:-3]
                try:
                    module = importlib.import_module(f"commands.{extension}")
                    module.setup(self)
                    self.logger.debug(f"Loaded command group '{extension}'")
                except Exception as e:
                    exception = f"{type(e).__name__}: {e}"
                    self.logger.error(f"Failed to load command group {extension}\n{exception}")
                    self.failed_groups.append(extension)

    async def init_db(self) -> None:
        os.makedirs(os.path.dirname(os.path.abspath(self.database_path)), exist_ok=True)
        async with aiosqlite.connect(self.database_path) as db:
            with open(
                f"{os.path.realpath(os.path.dirname(__file__))}/database/schema.sql",
                encoding="utf-8",
            ) as file:
                await db.executescript(file.read())
            await db.commit()

    async def open_ledger(self) -> RunLedger:
        await self.init_db()
        return RunLedger(connection=await aiosqlite.connect(self.database_path))

    def emit(self, text: str) -> None:
        print(text, file=self.out)

    def run(self, argv=None) -> int:
        """
        Parse the arguments and execute the selected command.

        :param argv: The arguments, without the program name. Defaults to sys.argv.
        :return: The process exit code.
        """
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_USAGE
        self.logger.debug(f"Python version: {platform.python_version()}")
        try:
            code = args.handler(args)
        except Exception as error:
            return self.on_command_error(args, error)
        self.on_command_completion(args, code)
        return code

    def on_command_completion(self, args, code: int) -> None:
        """
        The code in this event is executed every time a command has finished without raising.

        :param args: The parsed arguments of the command.
        :param code: The exit code the command returned.
        """
        if code == EXIT_OK:
            self.logger.info(f"Executed {args.command} command")
        else:
            self.logger.warning(f"Executed {args.command} command with exit code {code}")

    def on_command_error(self, args, error: Exception) -> int:
        """
        The code in this event is executed every time a command raises.

        :param args: The parsed arguments of the command that failed.
        :param error: The error that has been faced.
        :return: The exit code for the error.
        """
        if isinstance(error, UsageError):
            print(f"gapbench {args.command}: error: {error}", file=self.err)
            return EXIT_USAGE
        elif isinstance(error, HypothesisError):
            print(f"gapbench {args.command}: error: {error}", file=self.err)
            return EXIT_USAGE
        elif isinstance(error, GapSeriesError):
            print(f"gapbench {args.command}: error: {error}", file=self.err)
            self.logger.warning(f"{args.command} failed with {type(error).__name__}: {error}")
            return EXIT_USAGE
        else:
            raise error


def main(argv=None) -> int:
    try:
        setup_logger()
    except ConfigurationError as error:
        print(f"gapbench: error: {error}", file=sys.stderr)
        return EXIT_USAGE
    host = GapBench()
    host.load_commands()
    if host.failed_groups:
        print(
            f"gapbench: error: failed to load command group(s) {', '.join(host.failed_groups)}; see the log",
            file=host.err,
        )
        return EXIT_USAGE
    return host.run(argv)


if __name__ == "__main__":
    sys.exit(main())
