"""Check d∘d = 0 across the fixture algebroids while sweeping cochain and coefficient degree.

Reports, per algebroid, the number of samples, the largest polynomial degree
met in a first differential and the wall time.  Any nonzero d∘d is printed
with its first offending table entry and the script exits 1.

    python3 scripts/d2_sweep.py --samples 20 --max-coeff-degree 3
"""

import argparse
import random
import sys
import time

from vbderiv.config import Limits
from vbderiv.defcomplex import differential
from vbderiv.sampling import random_cochain
from vbderiv.suite import fixture_names, load_fixture
from vbderiv.vb import SplitVB


def algebroids():
    for name in fixture_names():
        doc = load_fixture(name)
        for block in doc.names():
            obj = doc.get(block)
            if block in doc.names("algebroid"):
                yield f"{name}/{block}", obj
            elif isinstance(obj, SplitVB):
                yield f"{name}/{block}", obj.total


def max_poly_degree(c) -> int:
    polys = [p for sec in c.values.values() for p in sec.components]
    polys += [p for vf in c.symbols.values() for p in vf.components]
    return max((p.degree() for p in polys if p), default=0)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=10, help="samples per algebroid and degree pair")
    parser.add_argument("--max-cochain-degree", type=int, default=2)
    parser.add_argument("--max-coeff-degree", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    limits = Limits(degree_cap=args.max_cochain_degree + 2)
    bad = 0
    print(f"{'algebroid':<28}{'rank':>5}{'samples':>9}{'max deg':>9}{'seconds':>9}")
    for label, A in algebroids():
        rng = random.Random(f"{args.seed}:{label}")
        start = time.perf_counter()
        n = top = 0
        for k in range(args.max_cochain_degree + 1):
            for coeff in range(args.max_coeff_degree + 1):
                for _ in range(args.samples):
                    c = random_cochain(rng, A, k, max_degree=coeff)
                    dc = differential(c, limits)
                    ddc = differential(dc, limits)
                    top = max(top, max_poly_degree(dc))
                    n += 1
                    if not ddc.is_zero():
                        bad += 1
                        print(f"  {label}: degree {k}: {ddc.describe().splitlines()[0]}")
        print(f"{label:<28}{A.rank:>5}{n:>9}{top:>9}{time.perf_counter() - start:>9.2f}")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
