"""Branching of the Belyi maps t39, t47, tau and t50; degree doubling across folds."""

import argparse
import time

from pvifold.catalog import branching, load_entry
from pvifold.catalog.belyi import box_patterns


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--precision", type=int, default=50)
    parser.add_argument("--skip-boxes", action="store_true")
    args = parser.parse_args()
    start = time.perf_counter()
    if not args.skip_boxes:
        print("-- type 39 / type 47 curves")
        for pattern in box_patterns(dps=args.precision).values():
            print(pattern.to_text())
    print("-- degree doubling")
    for src, tgt in (("boalch-39", "boalch-47"), ("boalch-44", "boalch-50")):
        degs = []
        for eid in (src, tgt):
            entry = load_entry(eid)
            p = branching(entry.solution.t, eid, dps=args.precision, orbits=False)
            degs.append(p.degree)
            print(f"{p.to_text()}  claimed degree {entry.degree}")
        print(f"{src} => {tgt}: {degs[0]} => {degs[1]}")
    print("-- divisor of t50")
    p = branching(load_entry("boalch-50").solution.t, "boalch-50", dps=max(args.precision, 60))
    for fiber in ("0", "inf", "1"):
        print(f"{fiber:>3}: (multiplicity, points) {p.rational_divisors(fiber)}")
    print(f"done in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
