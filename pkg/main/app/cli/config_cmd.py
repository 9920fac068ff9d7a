# File name: config_cmd.py
# Created: 3/13/2026 11:05 AM
# Purpose: config show / set
# Notes:
# - Values are JSON ("20", "\"transform\"", "[2, 3]"); bare words are taken as strings
# Used: Yes

from __future__ import annotations

import json

import main.core.configurator as config
from main.app.cli.common import UsageError
from main.core.logic_engine import Engine


def cmd_config_show(args, engine: Engine) -> int:
    cfg = config.read_config()
    if args.path:
        value = config.get_config(args.path)
        if value is None:
            raise UsageError(f"no config key {args.path!r}")
        cfg = value
    engine.emit(json.dumps(cfg, indent=2))
    return 0


def cmd_config_set(args, engine: Engine) -> int:
    if args.path.split(".")[0] == "_DO_NOT_MODIFY":
        raise UsageError(f"{args.path} is read-only")
    try:
        value = json.loads(args.value)
    except ValueError:
        value = args.value
    config.update_config(args.path, value)
    engine.emit(json.dumps(config.get_config(args.path)))
    return 0


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("config", parents=parents, help="show or change mcw.json settings")
    actions = p.add_subparsers(dest="action", required=True, metavar="<action>")

    show = actions.add_parser("show", parents=parents, help="print the merged config")
    show.add_argument("path", nargs="?", default=None, help="dotted key, e.g. coloring.table_bits_cap")
    show.set_defaults(func=cmd_config_show)

    change = actions.add_parser("set", parents=parents, help="update one key")
    change.add_argument("path", help="dotted key")
    change.add_argument("value", help="JSON value")
    change.set_defaults(func=cmd_config_set)
