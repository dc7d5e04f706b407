"""Check the measure inequality 2^mu(child1) + 2^mu(child2) <= 2^mu(parent) on traced searches."""
import argparse
import random
from collections import Counter

from pwcolor.engine import EngineConfig, SearchState, check_measure_decrease, enum_is_pw
from pwcolor.graph import generate
from pwcolor.tables import PUBLISHED


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--assignment", default="four_coloring_1", choices=sorted(PUBLISHED))
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--graphs", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    entry = PUBLISHED[args.assignment]
    w = entry["weights"]
    d = entry["c"] - 1
    k = (d * args.n) // (d + 1)
    nodes, bad = 0, Counter()
    for seed in range(args.seed, args.seed + args.graphs):
        p = random.Random(seed).uniform(0.3, 0.9)
        g = generate("gnp", n=args.n, p=p, seed=seed)
        cfg = EngineConfig(d=d, k=k, alpha=w.alpha, trace=True)
        res = enum_is_pw(g, SearchState.root(), cfg)
        for rec in check_measure_decrease(g, res.trace, cfg, w):
            nodes += 1
            if not rec.holds:
                bad[rec.node.degree] += 1
    print(f"{args.assignment}: {nodes} branching nodes, {sum(bad.values())} violations")
    for deg, cnt in sorted(bad.items()):
        print(f"  degree {deg}: {cnt}")


if __name__ == "__main__":
    main()
