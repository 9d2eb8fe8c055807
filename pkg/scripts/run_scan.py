"""Scan small monic curves for instances where family B holds but family A fails.

    python3 scripts/run_scan.py --m 3 --lo -1 --hi 1 --exhaustive
    python3 scripts/run_scan.py --m 4 --lo -1 --hi 1 --samples 300 --seed 1
"""
import argparse
import json
import time
from dataclasses import asdict

from kellerid.oracles import implication_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--lo", type=int, default=-1)
    ap.add_argument("--hi", type=int, default=1)
    ap.add_argument("--exhaustive", action="store_true")
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    start = time.perf_counter()
    report = implication_scan(args.m, args.lo, args.hi, exhaustive=args.exhaustive,
                              samples=args.samples, seed=args.seed)
    out = asdict(report)
    out["counterexamples"] = [str(c) for c in report.counterexamples]
    out["m3_mismatches"] = [str(c) for c in report.m3_mismatches]
    out["seconds"] = round(time.perf_counter() - start, 2)
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
