"""Regenerate the canonical catalog fixtures from the compact transcriptions."""

import argparse
import time

from pvifold.catalog import write_fixtures


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=None, help="output directory (default: package fixtures)")
    args = parser.parse_args()
    start = time.perf_counter()
    for path in write_fixtures(args.out):
        print(f"{path.name:<24} {path.stat().st_size:>9} bytes")
    print(f"done in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
