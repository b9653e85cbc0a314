"""Compare the permutation oracle with the recurrence for every n + r <= N.

Usage: python3 scripts/oracle_sweep.py [N]   (default 9; N = 10 takes about a minute)
"""
import sys
import time

from rderangements import core


def main():
    total_max = int(sys.argv[1]) if len(sys.argv) > 1 else 9
    start = time.perf_counter()
    mismatches = 0
    for total in range(total_max + 1):
        row = core.oracle_row(total)
        fast = [core.r_derangement(r, total - r) for r in range(total + 1)]
        mismatches += sum(a != b for a, b in zip(row, fast))
        print(f"n+r={total}: {row}")
    print(f"{mismatches} mismatches in {time.perf_counter() - start:.2f} s")
    sys.exit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
