"""Check the matching factorization identity on the named applications and
the plain symmetric instances."""

import argparse
import sys

from squarish.splits import SYMMETRIC_INSTANCES, check_symmetric_instance, run_applications


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    checks = run_applications(args.max_n) + [check_symmetric_instance(*c) for c in SYMMETRIC_INSTANCES]
    for c in checks:
        print(c.line())
    bad = sum(not c.ok for c in checks)
    print(f"# {len(checks)} instances, {bad} failures")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
