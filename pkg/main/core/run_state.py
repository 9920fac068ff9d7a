# File name: run_state.py
# Created: 12/21/2025 04:34 PM
# Purpose: Per-invocation registry shared across the CLI commands (inputs, results, phase timings)
# Notes:
# - Values live under dotted paths, e.g. "inputs.expression" or "timings.dp"
# - "\." keeps a dot inside one key ("inputs.K3\.mcw")
# - insert_data creates intermediate levels
# Used: Yes

from __future__ import annotations

import re
from typing import Any


_UNESCAPED_DOT = re.compile(r"(?<!\\)\.")


def split_path(path: str) -> list[str]:
    if not isinstance(path, str):
        return []
    keys = (key.replace("\\.", ".") for key in _UNESCAPED_DOT.split(path))
    return [key for key in keys if key]


class RunState:
    def __init__(self):
        self._data: dict[str, Any] = {}

    def insert_data(self, path: str, data: Any) -> None:
        *parents, last = split_path(path) or [None]
        if last is None:
            raise KeyError(f"empty state path {path!r}")
        level = self._data
        for key in parents:
            if not isinstance(level.get(key), dict):
                level[key] = {}
            level = level[key]
        level[last] = data

    def _parent_of(self, path: str) -> tuple[dict | None, str | None]:
        keys = split_path(path)
        if not keys:
            return None, None
        level: Any = self._data
        for key in keys[:-1]:
            level = level.get(key) if isinstance(level, dict) else None
        return (level, keys[-1]) if isinstance(level, dict) else (None, None)

    def find(self, path: str, default=None):
        parent, key = self._parent_of(path)
        return default if parent is None else parent.get(key, default)

    def section(self, path: str) -> dict[str, Any]:
        found = self.find(path, {})
        return dict(found) if isinstance(found, dict) else {}
