"""Share of primes <= x lying in A_r, for a few r and x.

Usage: python3 scripts/density_report.py [--r 1 2 3] [--x 100 1000 5000]
"""
import argparse
import math

from rderangements import modular


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--x", type=int, nargs="+", default=[100, 1000, 3000])
    args = ap.parse_args()
    print(f"1/e = {1 / math.e:.6f}")
    print("r      x  primes  in_A  density")
    for r in args.r:
        for x in args.x:
            rep = modular.density_report(r, x)
            print(f"{r}  {x:5d}  {rep.primes:6d}  {rep.in_A:4d}  {float(rep.density):.6f}")


if __name__ == "__main__":
    main()
