"""Decompose random structured maps and report what was recovered.

    python3 scripts/roundtrip_experiment.py --maps 20 --max-size 6 --n 3
"""
import argparse
import random
import time

from incidence_lie import INTPOLY, ProbeBudget, decompose
from incidence_lie.algebra import FiElement
from incidence_lie.maps import AdditiveInduced, CentralTrace, Inner, MapSpec
from incidence_lie.preorder import random_preorder
from incidence_lie.ring import AdditiveDerivation


def random_map(P, rng) -> MapSpec:
    C = P.classification
    pool = [(1,), (-1,), (2,), (0, 1), (1, 1)]
    alpha = FiElement(P, INTPOLY, {k: rng.choice(pool) for k in P.pairs if rng.random() < 0.5})
    F = {i: AdditiveDerivation.poly_times_ddt([rng.randint(-2, 2), rng.randint(-2, 2)]) for i in range(len(C.classes))}
    h = {j: (0, rng.randint(-2, 2)) for j in range(len(P.components))}
    return MapSpec(P, INTPOLY, (Inner(alpha), AdditiveInduced(F), CentralTrace(h)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--maps", type=int, default=20)
    ap.add_argument("--max-size", type=int, default=6)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--probes", type=int, default=300)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    budget = ProbeBudget(args.seed, args.probes)
    ok = 0
    for k in range(args.maps):
        P = random_preorder(rng.randint(2, args.max_size), rng, density=0.4, backward=0.08)
        L = random_map(P, rng)
        start = time.perf_counter()
        rep = decompose(L, args.n, budget)
        recovered = rep.decomposable and rep.fitted_derivs == dict(L.terms[1].assign)
        ok += recovered
        print(
            f"map {k:>3}: {P.size} vertices, {len(P.classification.classes)} classes, "
            f"{'recovered' if recovered else 'NOT recovered'} in {time.perf_counter() - start:.2f}s"
        )
    print(f"{ok}/{args.maps} recovered")


if __name__ == "__main__":
    main()
