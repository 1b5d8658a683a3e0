"""Print iterated Cesaro means of 1, -1, 2, -2, 3, -3, ... at a few checkpoints.

    python scripts/cesaro_table.py [N] [K]
"""

import sys

from hoelder.cli import decimal_string
from hoelder.seq import cesaro_power_prefix, rule


def main(n: int = 10_000, k: int = 2) -> None:
    a = rule("alt_ceil_half")
    cols = [cesaro_power_prefix(a, j, n) for j in range(k + 1)]
    print("n," + ",".join(f"k{j}" for j in range(k + 1)))
    checkpoints = sorted({1, 2, 3, 4, 5, 6, 7} | {10**e for e in range(1, 8) if 10**e <= n} | {n})
    for i in checkpoints:
        print(f"{i}," + ",".join(decimal_string(c[i - 1], 12) for c in cols))


if __name__ == "__main__":
    main(*(int(x) for x in sys.argv[1:3]))
