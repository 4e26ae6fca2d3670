"""Count proper-capable preorders among random samples and spot-check witnesses.

    python3 scripts/properness_census.py --samples 300 --max-size 7
"""
import argparse
import random
from collections import Counter

from incidence_lie import INTPOLY, ProbeBudget, check_lie_n_derivation, emit_witness, properness_criterion
from incidence_lie.preorder import random_preorder


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--max-size", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--probes", type=int, default=200)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    by_size: dict[int, Counter] = {}
    refuted = 0
    for _ in range(args.samples):
        P = random_preorder(rng.randint(1, args.max_size), rng, density=rng.uniform(0.1, 0.6), backward=0.08)
        capable = properness_criterion(P.classification).proper_capable
        by_size.setdefault(P.size, Counter())[capable] += 1
        W = emit_witness(P.classification, INTPOLY)
        if W is not None and not check_lie_n_derivation(W, 2, ProbeBudget(args.seed, args.probes)).passed:
            refuted += 1

    print("size  proper-capable  not  fraction")
    for size in sorted(by_size):
        c = by_size[size]
        total = c[True] + c[False]
        print(f"{size:>4}  {c[True]:>14}  {c[False]:>3}  {c[True] / total:8.2f}")
    print(f"witnesses refuted by the Lie falsifier: {refuted}")


if __name__ == "__main__":
    main()
