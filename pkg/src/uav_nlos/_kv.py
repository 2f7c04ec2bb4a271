"""Flat ``key = value`` config files shared by the scenario and link-budget loaders."""

from __future__ import annotations

import math
from pathlib import Path


class InputError(ValueError):
    """Malformed or invalid user-supplied input (files, flags, configs)."""


def parse_kv(text: str, keys: tuple[str, ...], source: str = "<string>") -> dict[str, float]:
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":" if ":" in line else None
        if sep is None:
            raise InputError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = (part.strip() for part in line.partition(sep))
        if key not in keys:
            raise InputError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise InputError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            number = float(val)
        except ValueError:
            raise InputError(f"{source}:{lineno}: {key} is not a number: {val!r}") from None
        if not math.isfinite(number):
            raise InputError(f"{source}:{lineno}: {key} must be finite")
        values[key] = number
    missing = [k for k in keys if k not in values]
    if missing:
        raise InputError(f"{source}: missing keys {', '.join(missing)}")
    return values


def read_kv(path: str | Path, keys: tuple[str, ...]) -> dict[str, float]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_kv(text, keys, source=str(path))


def format_kv(values: dict[str, float]) -> str:
    return "".join(f"{k} = {v!r}\n" for k, v in values.items())
