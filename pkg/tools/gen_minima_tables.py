#!/usr/bin/env python3
"""Regenerate the packaged successive-minima tables (m <= 10^8)."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qseries.exponents import ExponentKind
from qseries import modcount

LIMIT = 10**8
OUT = os.path.join(os.path.dirname(__file__), "..", "src", "qseries", "data")


def main():
    limit = int(sys.argv[1]) if len(sys.argv) > 1 else LIMIT
    os.makedirs(OUT, exist_ok=True)
    for kind in (ExponentKind.SQUARE, ExponentKind.TRIGONAL, ExponentKind.PENTAGONAL):
        table = modcount.successive_minima(kind, limit)
        path = os.path.join(OUT, modcount._TABLE_FILES[kind])
        modcount.write_table(path, table)
        print(f"{path}: {len(table.entries)} records")


if __name__ == "__main__":
    main()
