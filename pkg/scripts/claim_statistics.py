"""Enumerate witnesses for several (scheme, basis, size) configs and tabulate
claim checks, thinning shortfalls and the primes produced by extraction.

    python scripts/claim_statistics.py --bound 10000 --limit 100
"""
import argparse
from collections import Counter

from folkprimes.arith import first_primes
from folkprimes.claims import claim_report, extract_new_prime
from folkprimes.errors import ShortfallError
from folkprimes.search import SearchConfig, enumerate_witnesses

CONFIGS = [
    ("proof1", 1, 3), ("proof1", 2, 3), ("proof1", 3, 4),
    ("proof2", 1, 3), ("proof2", 2, 3), ("proof2", 2, 4),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=10**4)
    ap.add_argument("--limit", type=int, default=100)
    args = ap.parse_args()

    print(f"{'scheme':7} {'N':>2} {'M':>2} {'found':>5} {'viol':>4} {'max nu2 mult':>12} "
          f"{'extracted':>9} {'short':>5}  most common new primes")
    for scheme, k, size in CONFIGS:
        basis = first_primes(k)
        ws = enumerate_witnesses(SearchConfig(scheme, basis, size, args.bound), args.limit)
        violations = shortfalls = 0
        max_mult = 0
        primes = Counter()
        for w in ws:
            report = claim_report(w.elements, scheme, basis)
            violations += len(report.violations)
            max_mult = max(max_mult, max(report.multiplicity.counts[2].values()))
            try:
                primes[extract_new_prime(w).new_prime] += 1
            except ShortfallError:
                shortfalls += 1
        common = ", ".join(f"{p}x{c}" for p, c in primes.most_common(5))
        print(f"{scheme:7} {k:>2} {size:>2} {len(ws):>5} {violations:>4} {max_mult:>12} "
              f"{sum(primes.values()):>9} {shortfalls:>5}  {common}")


if __name__ == "__main__":
    main()
