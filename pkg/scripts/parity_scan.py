"""Random sweep checking the parity shortcuts against the full degree.

For systems without spatial symmetry the eta counters predict, purely
mod 2, certain classes that must carry a nonzero degree coefficient.
This script draws random diagonal linearizations, runs the full product
formula, and tabulates how often each prediction is confirmed and how
sharp it is (prediction classes vs all nonzero classes).

Eigenvalues are drawn as p/7 with 7 coprime to every modulus used, so
no resonance j^2 = -m^2 mu can occur and every draw is nondegenerate.

Usage: python3 scripts/parity_scan.py [trials] [seed]
"""

import sys
from collections import Counter
from fractions import Fraction

import numpy as np

from eqdeg.spectral import ProblemConfig, existence_degree, parity_predictions


def run(trials: int = 50, seed: int = 12345) -> int:
    rng = np.random.default_rng(seed)
    confirmed: Counter = Counter()
    misses = 0
    rows = []
    for _ in range(trials):
        m = int(rng.choice([2, 3, 4, 5, 6, 8, 10, 12]))
        k = int(rng.integers(1, 4))
        ps: list[int] = []
        while len(ps) < k:
            q = int(rng.integers(1, 28))
            if q % 7 != 0 and q not in ps:
                ps.append(q)
        spectrum = tuple((Fraction(-p, 7), 1) for p in sorted(ps))
        report = existence_degree(ProblemConfig(m=m, k=k, spectrum=spectrum))
        nonzero = dict(report.nonzero_terms)
        preds = parity_predictions(report.table, m)
        hit = 0
        for pred in preds:
            if any(nonzero.get(c, 0) != 0 for c in pred.candidates):
                hit += 1
                confirmed[pred.source] += 1
            else:
                misses += 1
        rows.append((m, [str(x) for x, _mult in spectrum],
                     f"{hit}/{len(preds)}", len(nonzero)))
    width = max(len(" ".join(r[1])) for r in rows)
    print(f"{'m':>3}  {'spectrum':<{width}}  {'parities':>8}  nonzero")
    for m, spec, parities, nz in rows:
        print(f"{m:>3}  {' '.join(spec):<{width}}  {parities:>8}  {nz:>7}")
    print()
    print(f"{trials} trials, {sum(confirmed.values())} predictions confirmed, "
          f"{misses} missed")
    for source, count in sorted(confirmed.items()):
        print(f"  {source}: {count}")
    return 1 if misses else 0


if __name__ == "__main__":
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 50
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 12345
    sys.exit(run(trials, seed))
