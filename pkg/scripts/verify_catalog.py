"""Residual test for every catalog entry and the solutions derived from type 39."""

import argparse
import time

from pvifold.catalog import type39_chain, verify_catalog, verify_entry


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--precision", type=int, default=60)
    parser.add_argument("--samples", type=int, default=20)
    parser.add_argument("--mode", choices=("auto", "exact", "numeric"), default="auto")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()
    start = time.perf_counter()
    reports = verify_catalog(mode=args.mode, samples=args.samples, dps=args.precision, jobs=args.jobs)
    reports += [verify_entry(sol, args.mode, args.samples, args.precision) for sol in type39_chain().values()]
    for r in reports:
        print(r.to_text())
    passed = sum(r.passed for r in reports)
    print(f"{passed}/{len(reports)} passed in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
