"""Tabulate the three IM verdicts on candidate pairs for every flat connection in the fixtures.

For each fixture connection and seed, candidates are drawn in five kinds
(internal, scalar, perturbed, random, symbol).  The table counts how many of
each kind are IM and whether the PDE system, the pair conditions and the
reconstructed derivation ever disagree.

    python3 scripts/equivalence_experiment.py --seeds 5 --count 100
"""

import argparse
import random
import time
from collections import Counter

from vbderiv.algebroid import check_flatness
from vbderiv.im import candidate_verdicts
from vbderiv.sampling import equivalence_candidates
from vbderiv.suite import fixture_names, load_fixture
from vbderiv.vb import build_trivial_core


def flat_connections():
    for name in fixture_names():
        doc = load_fixture(name)
        for block in doc.names("connection"):
            nabla = doc.get(block)
            if check_flatness(nabla.algebroid, nabla).passed:
                yield f"{name}/{block}", nabla


def run(seeds: int, count: int, max_degree: int):
    rows = []
    for label, nabla in flat_connections():
        A = nabla.algebroid
        W = build_trivial_core(A, nabla)
        im, total, disagree = Counter(), Counter(), 0
        start = time.perf_counter()
        for seed in range(seeds):
            rng = random.Random(f"{seed}:{label}")
            for cand in equivalence_candidates(rng, A, nabla, count, max_degree):
                kind = cand.label.split("-")[0]
                verdicts = candidate_verdicts(A, nabla, cand, W)
                total[kind] += 1
                im[kind] += verdicts[0]
                disagree += len(set(verdicts)) != 1
        rows.append((label, im, total, disagree, time.perf_counter() - start))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=3)
    parser.add_argument("--count", type=int, default=100, help="candidates per seed and connection")
    parser.add_argument("--max-degree", type=int, default=1, help="coefficient degree of candidates")
    args = parser.parse_args()

    kinds = ("internal", "scalar", "perturbed", "random", "symbol")
    print(f"{'connection':<16}" + "".join(f"{k:>12}" for k in kinds) + f"{'disagree':>10}{'seconds':>9}")
    for label, im, total, disagree, secs in run(args.seeds, args.count, args.max_degree):
        cells = "".join(f"{im[k]:>6}/{total[k]:<5}" for k in kinds)
        print(f"{label:<16}{cells}{disagree:>10}{secs:>9.2f}")
    print("cells are IM candidates / candidates of that kind")


if __name__ == "__main__":
    main()
