"""Greedy constructions for a few real targets and their amplitude certificates.

    python scripts/greedy_certificates.py [N_MAX]
"""

import json
import sys
from decimal import Decimal
from fractions import Fraction

from hoelder.construct import greedy_certificate, real_target

TARGETS = [
    ("1/2", Fraction(1, 2), 0, 1),
    ("2/3", Fraction(2, 3), 0, 1),
    ("sqrt(2) to 12 digits", Decimal("1.41421356237"), 1, 2),
    ("pi to 12 digits", Decimal("3.14159265359"), 3, 4),
]


def main(n_max: int = 100_000) -> None:
    for label, r, a, b in TARGETS:
        _, state = real_target(r, a, b)
        cert = greedy_certificate(state, n_max)
        print(label, json.dumps(cert.to_dict(), sort_keys=True))
        print("  first switches:", state.switches[:6])


if __name__ == "__main__":
    main(*(int(x) for x in sys.argv[1:2]))
