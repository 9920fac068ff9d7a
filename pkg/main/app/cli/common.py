# File name: common.py
# Created: 3/13/2026 8:55 AM
# Purpose: Small helpers shared by the command modules
# Used: Yes

from __future__ import annotations

import argparse


class UsageError(Exception):
    """Bad argument value detected after parsing (exit 2)."""


def flag(value: bool) -> str:
    return "true" if value else "false"


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def mask_bits(mask: int, k: int) -> str:
    """Labels 1..k left to right, '1' where the label is in the mask."""
    return "".join("1" if mask >> (label - 1) & 1 else "0" for label in range(1, k + 1)) or "-"
