"""Small text-parsing helpers shared by the CLI and instance files."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from transmeasure.errors import ConfigError, InvalidInputError


def parse_int_list(text: str) -> list[int]:
    """Parse comma-separated integers such as ``"1,0,-2"``."""
    items = [item.strip() for item in text.split(",")]
    if not items or any(item == "" for item in items):
        raise InvalidInputError(f"Malformed integer list: {text!r}")
    try:
        return [int(item) for item in items]
    except ValueError as exc:
        raise InvalidInputError(f"Malformed integer list: {text!r}") from exc


def parse_fraction(value: str | int | Fraction) -> Fraction:
    """Parse an exact rational from ``"3/2"``, ``"-4"`` or ``"1e-30"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"Not an exact rational: {value!r}") from exc


def parse_fraction_list(text: str) -> list[Fraction]:
    """Parse comma-separated exact rationals such as ``"1/2,3,-5/7"``."""
    return [parse_fraction(item) for item in text.split(",")]


def read_key_value_file(path: str | Path) -> dict[str, str]:
    """Read a ``key = value`` config file; ``#`` starts a comment."""
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read config file {file_path}: {exc}") from exc

    values: dict[str, str] = {}
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"{file_path}:{line_number}: expected 'key = value', got {raw_line!r}"
            )
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{file_path}:{line_number}: empty key")
        values[key.replace("_", "-")] = value
    return values


__all__ = [
    "parse_fraction",
    "parse_fraction_list",
    "parse_int_list",
    "read_key_value_file",
]
