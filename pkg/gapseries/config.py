"""
Environment-backed settings.

Values are read with os.getenv on every call, so a `.env` loaded by the entry
point (or a test's monkeypatch) is picked up without restarting anything.
"""

import logging
import os

from gapseries.errors import ConfigurationError

DEFAULT_ENUM_LIMIT = 64
DEFAULT_QBINOMIAL_MAX = 512
DEFAULT_LOG_FILE = "gapbench.log"
DEFAULT_DATABASE = os.path.join(
    os.path.realpath(os.path.dirname(os.path.dirname(__file__))),
    "database",
    "database.db",
)


def _int_setting(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigurationError(f"{name} must be at least {minimum}, got {value}")
    return value


def enumeration_limit() -> int:
    """Largest n the brute-force enumerators accept."""
    return _int_setting("GAPSERIES_ENUM_LIMIT", DEFAULT_ENUM_LIMIT)


def qbinomial_cache_limit() -> int:
    return _int_setting("GAPSERIES_QBINOMIAL_MAX", DEFAULT_QBINOMIAL_MAX)


def worker_count() -> int:
    return _int_setting("GAPSERIES_WORKERS", 1, minimum=1)


def log_level() -> str:
    level = os.getenv("GAPSERIES_LOG_LEVEL", "INFO").strip().upper() or "INFO"
    if hasattr(logging, "getLevelNamesMapping"):
        known = logging.getLevelNamesMapping()
    else:
        known = logging._nameToLevel
    if level not in known:
        raise ConfigurationError(
            f"GAPSERIES_LOG_LEVEL must be one of {', '.join(sorted(known))}, got {level!r}"
        )
    return level


def log_file() -> str:
    return os.getenv("GAPSERIES_LOG_FILE", DEFAULT_LOG_FILE)


def database_path() -> str:
    return os.getenv("GAPSERIES_DATABASE", DEFAULT_DATABASE)
