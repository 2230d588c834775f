"""Manin fold of the (0,1,1,1) companion back onto the dihedral solution."""

import argparse

from pvifold.catalog import hitchin_round_trip


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=10)
    parser.add_argument("--precision", type=int, default=60)
    args = parser.parse_args()
    print(hitchin_round_trip(args.samples, args.precision).to_text())


if __name__ == "__main__":
    main()
