"""Run every certificate and formula check over default ranges; exit 1 on any FAIL."""

import argparse
import sys

from squarish.closed_forms import FormulaId
from squarish.decomposition import THEOREMS, certify
from squarish.verify import check_formula

CERT_RANGES = {
    "THM2_1": range(2, 9), "THM2_1_SPLIT": range(2, 9), "THM2_1_MARKED": range(2, 9),
    "THM3_1": range(2, 6), "THM3_1_MARKED": range(2, 6), "THM3_3": range(1, 7),
    "THM3_3_SPLIT": range(1, 6), "THM6_1": range(1, 6), "THM6_1_SPLIT": range(1, 5),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5, help="range end for formula checks")
    ap.add_argument("--skip-certs", action="store_true")
    args = ap.parse_args()
    fails = 0
    if not args.skip_certs:
        for thm in THEOREMS:
            for n in CERT_RANGES[thm]:
                c = certify(thm, n)
                fails += c.failed
                print(c.line(), flush=True)
    for fid in FormulaId:
        for n in range(1, args.max_n + 1):
            chk = check_formula(fid, n)
            fails += not chk.passed
            print(chk.line(), flush=True)
    print(f"# {fails} failures")
    sys.exit(1 if fails else 0)


if __name__ == "__main__":
    main()
