"""Stream generated bodies through the conjecture checks and list the tightest margins.

    python3 scripts/search_conjectures.py [budget] [seed] [generator]
"""
import sys
from collections import Counter

from gnum.checks import search_counterexamples
from gnum.generators import GeneratorSpec, generate

CONJECTURES = ("conj_floor", "conj2_upper", "conj2_lower", "conj2_sym")


def main(argv):
    budget = int(argv[1]) if len(argv) > 1 else 200
    seed = int(argv[2]) if len(argv) > 2 else 7
    gen = argv[3] if len(argv) > 3 else "mixed"
    spec = GeneratorSpec(gen, seed=seed)
    family = {generate(spec, k).instance_id: generate(spec, k).family for k in range(budget)}
    critical = False
    for cid in CONJECTURES:
        res = search_counterexamples(cid, gen, budget, seed, spec=spec)
        zero = Counter(family[r.instance_id] for r in res.near_misses if r.margin == 0)
        print(f"{cid:12s} fails={len(res.fails)} margin-0={sum(zero.values())} by family {dict(zero)}")
        for r in res.fails:
            print("   ", r.instance_id, r.verdict, "critical" if r.critical else "", r.details)
            critical |= r.critical
    return 2 if critical else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
