"""Lexicographically least witness for growing target size M, per scheme/basis.

Shows how quickly the least witness outgrows a desk-scale bound, next to the
size each argument actually asks for.

    python scripts/least_witness_growth.py --max-size 6 --bound 5000 --budget 5000000
"""
import argparse

from folkprimes.arith import first_primes
from folkprimes.colorings import required_size
from folkprimes.search import SearchConfig, find_monochromatic


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-size", type=int, default=5)
    ap.add_argument("--bound", type=int, default=5000)
    ap.add_argument("--budget", type=int, default=2_000_000)
    ap.add_argument("--primes", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()

    for scheme in ("proof1", "proof2"):
        for k in args.primes:
            basis = first_primes(k)
            print(f"{scheme} basis {list(basis.primes)}: required M = "
                  f"{required_size(scheme, basis)}")
            for size in range(1, args.max_size + 1):
                cfg = SearchConfig(scheme, basis, size, args.bound,
                                   node_budget=args.budget, workers=args.workers)
                res = find_monochromatic(cfg)
                shown = list(res.witness.elements) if res.witness else "-"
                print(f"  M={size:<2} {res.outcome.value:16} nodes={res.nodes_explored:<9} "
                      f"{shown}")


if __name__ == "__main__":
    main()
