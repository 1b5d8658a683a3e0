"""Run the finite-model approximation over a seeded corpus of random chain maps.

    python scripts/fmodel_corpus.py [COUNT] [SEED]
"""

import random
import sys
from collections import Counter

from hoelder.corpus import random_chain_map
from hoelder.fmodel import approximate, drop_step3_generator, verify_approximation


def main(count: int = 200, seed: int = 0) -> int:
    rng = random.Random(seed)
    tally = Counter()
    for _ in range(count):
        f = random_chain_map(rng, rng.randint(0, 8))
        res = approximate(f, rng.randint(0, f.target.top))
        tally["ok" if verify_approximation(res).ok else "failed"] += 1
        tally["rank dropped"] += sum(res.modules[n].rank < f.target.rank(n) for n in range(len(res.modules)))
        if any(s.z_generators for s in res.stages):
            broken, _ = drop_step3_generator(res)
            tally["faults injected"] += 1
            tally["faults caught"] += not verify_approximation(broken).ok
    for key in ("ok", "failed", "rank dropped", "faults injected", "faults caught"):
        print(f"{key:16} {tally[key]}")
    return 1 if tally["failed"] or tally["faults caught"] != tally["faults injected"] else 0


if __name__ == "__main__":
    sys.exit(main(*(int(x) for x in sys.argv[1:3])))
