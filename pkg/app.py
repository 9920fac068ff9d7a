from __future__ import annotations

import sys

# Command-line entry point
from main.app.cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
