"""Run every check on the automorphism corpus and tabulate the verdicts per degree.

Each corpus member is f = x + p(y + q(x)), a component of a known automorphism,
so all columns should read the same as the ``n`` column.
"""
import argparse
import time
from collections import Counter

from kellerid.algebra import ZERO, X
from kellerid.keller import check_theorem_A, check_theorem_B, component_oracle_Q, construct_associated, jacobian
from kellerid.oracles import corpus_family, keller_oracle_linear


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ms", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--lo", type=int, default=-2)
    ap.add_argument("--hi", type=int, default=2)
    ap.add_argument("--with-oracle", action="store_true", help="also run the linear Keller oracle (slower)")
    args = ap.parse_args()

    qs = (ZERO, X, 1 - X)
    print(f"{'m':>2} {'n':>6} {'A':>6} {'Q':>6} {'B':>6} {'jac=1':>6} {'oracle':>6} {'sec':>7}")
    for m in args.ms:
        start = time.perf_counter()
        tally = Counter()
        for _, f, _partner in corpus_family(m, args.lo, args.hi, qs):
            tally["n"] += 1
            tally["A"] += check_theorem_A(f).verdict
            tally["Q"] += component_oracle_Q(f).verdict
            b = check_theorem_B(f).verdict
            tally["B"] += b
            if b:
                tally["jac"] += jacobian(f.poly(), construct_associated(f).g).is_constant()
            if args.with_oracle:
                tally["oracle"] += keller_oracle_linear(f) is not None
        oracle = tally["oracle"] if args.with_oracle else "-"
        print(f"{m:>2} {tally['n']:>6} {tally['A']:>6} {tally['Q']:>6} {tally['B']:>6} "
              f"{tally['jac']:>6} {oracle:>6} {time.perf_counter() - start:>7.1f}")


if __name__ == "__main__":
    main()
