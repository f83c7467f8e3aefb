"""Make the project root importable and configure logging before any test logs."""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from holopot.logging_utils import setup_logging  # noqa: E402

setup_logging("WARNING")
