# File name: console.py
# Created: 3/2/2026 10:40 AM
# Purpose: Shared rich console and logging setup
# Notes:
# - Diagnostics only, always on stderr; data output never goes through here
# Used: Yes

from __future__ import annotations

import logging

from rich.console import Console
from rich.logging import RichHandler


console = Console(stderr=True)


def setup_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING
    root = logging.getLogger("main")
    root.setLevel(level)
    if not any(isinstance(h, RichHandler) for h in root.handlers):
        root.addHandler(RichHandler(console=console, show_path=False, markup=True))
