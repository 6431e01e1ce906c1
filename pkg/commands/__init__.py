"""
Shared plumbing for the command groups.

Each module in this package defines one CommandGroup subclass and a
`setup(host)` function that registers it, the way the host discovers them.
"""

import enum
import re
from typing import Iterable, List, Sequence

from gapseries.errors import UsageError


_SPAN = re.compile(r"^(-?\d+)-(-?\d+)$")


class OutputFormat(enum.Enum):
    JSON = "json"
    CSV = "csv"
    BFILE = "bfile"
    PRETTY = "pretty"

    @classmethod
    def choices(cls) -> List[str]:
        return [member.value for member in cls]


class CommandGroup:
    name = None
    description = ""

    def __init__(self, host) -> None:
        self.host = host

    def register(self, subparsers) -> None:
        parser = subparsers.add_parser(self.name, help=self.description, description=self.description)
        self.build(parser)
        parser.set_defaults(handler=self.handle)

    def build(self, parser) -> None:
        raise NotImplementedError

    def handle(self, args) -> int:
        raise NotImplementedError

    def emit(self, text: str) -> None:
        self.host.emit(text)


def parse_int_list(text: str, flag: str) -> List[int]:
    """
    Parse "3", "1,2,5" or "1-4" (inclusive) into a list of integers.

    :param text: The flag value.
    :param flag: The flag name, used in the error message.
    """
    values = []
    try:
        for chunk in text.split(","):
            chunk = chunk.strip()
            span = _SPAN.match(chunk)
            if span:
                values.extend(range(int(span.group(1)), int(span.group(2)) + 1))
            else:
                values.append(int(chunk))
    except ValueError:
        raise UsageError(f"{flag} expects integers such as 3, 1,2,5 or 1-4, got {text!r}", flag)
    if not values:
        raise UsageError(f"{flag} is empty", flag)
    return values


def to_bfile(values: Sequence[int], offset: int = 0) -> str:
    """One "index value" pair per line, no trailing blank line."""
    return "\n".join(f"{offset + index} {value}" for index, value in enumerate(values))


def join_values(values: Iterable[int], separator: str = " ") -> str:
    return separator.join(str(value) for value in values)
