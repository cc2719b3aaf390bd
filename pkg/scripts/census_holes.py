"""Print the holed-square census M(H_n) = 2^n m^2 with timings."""

import argparse
import time

from squarish.verify import holes_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--method", choices=["auto", "direct", "split"], default="auto")
    args = ap.parse_args()
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        row = holes_count(n, args.method)
        print(f"{row.line()}  [{row.method}, {time.perf_counter() - t0:.2f}s]", flush=True)


if __name__ == "__main__":
    main()
