"""Tabulate the orthogonality postulate over small candidate sets of one-state effects."""
from __future__ import annotations

import argparse
from fractions import Fraction
from itertools import combinations

from qlogic import effects as fx
from qlogic.effects import Effect


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--denominator", type=int, default=4)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--max-seq-len", type=int, default=4)
    args = ap.parse_args()
    grid = [Fraction(k, args.denominator) for k in range(1, args.denominator)]
    for k in range(1, args.max_size + 1):
        for values in combinations(grid, k):
            effs = [Effect((v,), str(v)) for v in values]
            strict = fx.check_orthogonality_postulate(effs, args.max_seq_len)
            loose = fx.check_orthogonality_postulate(effs, args.max_seq_len, strict=False)
            shortest = strict.stats.get("shortest witness", "-")
            print(f"{', '.join(map(str, values)):<20} strict={strict.verdict:<5} loose={loose.verdict:<5} "
                  f"shortest witness={shortest}")


if __name__ == "__main__":
    main()
