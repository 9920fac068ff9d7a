# File name: configurator.py
# Created: 12/21/2025 6:53 PM
# Purpose: Shared config loader/saver for the multi-clique-width toolkit (config in working dir)
# Notes:
# - Human-editable JSON config (mcw.json), optional
# - Safe defaults merged into file values
# - Thread-safe read/write (lock)
# - Command-line flags win over anything read here
# Used: Yes

from __future__ import annotations

import json
import os
import threading
from copy import deepcopy
from typing import Any, Dict


_LOCK = threading.Lock()
_CONFIG_PATH = os.path.join(os.getcwd(), "mcw.json")


_DEFAULTS: Dict[str, Any] = {
    "expr": {
        "expansion_label_cap": 1 << 20,
    },
    "indpoly": {
        "join_method": "school",
    },
    "coloring": {
        "table_bits_cap": 24,
        "atom_rule": "exact",
        "join_method": "zeta",
    },
    "oracle": {
        "is_max_vertices": 24,
        "coloring_max_assignments": 10**7,
        "treewidth_max_vertices": 12,
    },
    "check": {
        "max_vertices": 16,
        "color_max_vertices": 10,
        "compile_max_vertices": 12,
        "colors": [2, 3],
        "expand_max_width": 6,
    },
    "cli": {
        "corpus_dir": "corpus",
    },
    "_DO_NOT_MODIFY": {
        "version": "0.2.0",
    },
}


_READ_ONLY = "_DO_NOT_MODIFY"


def _deep_merge(dst: Dict[str, Any], src: Dict[str, Any]) -> Dict[str, Any]:
    """Merge src into dst in place; nested dicts merge, everything else overwrites."""
    for key, value in src.items():
        if isinstance(value, dict) and isinstance(dst.get(key), dict):
            _deep_merge(dst[key], value)
        else:
            dst[key] = value
    return dst


def _keys(path: str) -> list[str]:
    return [key for key in path.split(".") if key.strip()]


def _with_defaults(data: Any) -> Dict[str, Any]:
    merged = deepcopy(_DEFAULTS)
    return _deep_merge(merged, data) if isinstance(data, dict) else merged


def read_config() -> Dict[str, Any]:
    """Full config: mcw.json (when present and valid) merged over the defaults."""
    with _LOCK:
        try:
            with open(_CONFIG_PATH, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, ValueError):
            data = None
    return _with_defaults(data)


def write_config(new_config: Dict[str, Any]) -> Dict[str, Any]:
    final_cfg = _with_defaults(new_config)
    with _LOCK:
        with open(_CONFIG_PATH, "w", encoding="utf-8") as f:
            json.dump(final_cfg, f, indent=2)
    return final_cfg


def update_config(path: str, value: Any) -> Dict[str, Any]:
    """
    Set one key by dotted path and persist, e.g.:
        update_config("coloring.table_bits_cap", 20)
    Keys under _DO_NOT_MODIFY are left alone and nothing is written.
    """
    cfg = read_config()
    keys = _keys(path)
    if not keys or keys[0] == _READ_ONLY:
        return cfg

    section = cfg
    for key in keys[:-1]:
        section = section.setdefault(key, {})
        if not isinstance(section, dict):
            return cfg
    section[keys[-1]] = value
    return write_config(cfg)


def get_config(path: str) -> Any:
    """Value at a dotted path such as "oracle.treewidth_max_vertices", or None."""
    keys = _keys(path)
    found: Any = read_config() if keys else None
    for key in keys:
        if not isinstance(found, dict):
            return None
        found = found.get(key)
    return found


def resolve(value: Any, path: str) -> Any:
    """Return value unless it is None, in which case fall back to the config."""
    return get_config(path) if value is None else value
