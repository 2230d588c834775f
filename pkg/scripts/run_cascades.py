"""Apply each recorded quadratic cascade and compare with the stored target."""

import argparse

from pvifold.catalog import check_all_cascades, check_hyperelliptic_form, complement_forms_check


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--numeric", action="store_true", help="stop after the numeric screen")
    args = parser.parse_args()
    for r in check_all_cascades(exact=not args.numeric):
        print(f"{r.to_text()}  [{r.seconds:.2f}s]")
    for eid in ("boalch-47-q", "boalch-48-q"):
        ok, signs = check_hyperelliptic_form(eid)
        print(f"{'PASS' if ok else 'FAIL'} q-form of {eid} (generator signs {signs})")
    for eid in ("boalch-50", "boalch-51"):
        print(f"{'PASS' if complement_forms_check(eid) else 'FAIL'} long forms of t equal 1 - t for {eid}")


if __name__ == "__main__":
    main()
