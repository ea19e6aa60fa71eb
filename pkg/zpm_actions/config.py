# zpm_actions/config.py
import logging
import os
import typing
from dataclasses import dataclass, asdict, fields

from zpm_actions.exceptions import ConfigError

logger = logging.getLogger(__name__)


def safe_int(value: typing.Any, default: typing.Optional[int] = None) -> typing.Optional[int]:
    """Safely converts a value to int, returning default on failure or a fractional value."""
    if value is None or isinstance(value, bool): return default
    if isinstance(value, int): return value
    try:
        number = float(value)  # Handle strings like "1e6" or "4096.0"
    except (ValueError, TypeError):
        return default
    if not number.is_integer():
        return default
    return int(number)


@dataclass(frozen=True)
class Limits:
    """Enumeration guards shared by every exhaustive computation."""
    max_group_order: int = 10 ** 6  # |Sp(2g,p)|, |GL(n,p)| materialized in memory
    max_candidates: int = 10 ** 7  # raw candidates scanned before deduplication
    max_sheets: int = 4096  # p^m, sheets of a permutation cover

    @classmethod
    def from_dict(cls, data: dict) -> 'Limits':
        """Creates Limits from a dictionary, ignoring unknown keys."""
        known_fields = {f.name for f in fields(cls)}
        values = {}
        for key, raw in data.items():
            if key not in known_fields:
                logger.warning("Warning: Ignoring unknown config key '%s'", key)
                continue
            value = safe_int(raw)
            if value is None or value <= 0:
                raise ConfigError(f"Config key '{key}' must be a positive integer, got {raw!r}")
            values[key] = value
        return cls(**values)

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_LIMITS = Limits()


def load_limits(path: typing.Optional[str]) -> Limits:
    """
    Reads a simple key=value config file.

    Blank lines and lines starting with '#' are skipped.
    A missing path (None) yields the defaults.
    """
    if path is None:
        return DEFAULT_LIMITS
    if not os.path.isfile(path):
        raise ConfigError(f"Config file not found: {path}")

    data: typing.Dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw_line in enumerate(fh, start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key=value', got {raw_line.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            data[key] = value
    limits = Limits.from_dict(data)
    logger.debug("Loaded limits from %s: %s", path, limits)
    return limits
