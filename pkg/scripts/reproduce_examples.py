"""Recompute the worked numbers: sequence lists, the D_4(8) estimate, tree, solutions."""
from rderangements import asymptotics, core, diophantine, modular, padic


def main():
    print("D_2(2..12):", [core.r_derangement(2, n) for n in range(2, 13)])
    print("D_3(3..12):", [core.r_derangement(3, n) for n in range(3, 13)])

    est = asymptotics.saddle_estimate(4, 8, 15, normalized=True)
    print(f"D_4(8)/12!: estimate {est.value}, exact {est.exact_decimal}, error {est.error:.3e}")
    for r in (2, 3):
        a = asymptotics.saddle_coeffs(r)
        print(f"r={r} coefficient sums n=0..6:", [str(a.weighted_sum(n)) for n in range(7)])

    for p, r in [(3, 2), (2, 3), (2, 2), (7, 2)]:
        c = modular.classify_prime(p, r)
        print(f"p={p} r={r}: in A_r={c.in_A} witness={c.witness}")

    for node in padic.valuation_tree(2, 2, 4, 400):
        print("  " * (node.k - 1) + node.label())

    for r in (2, 3):
        sol = diophantine.solve_factorial(r, 1)
        print(f"D_{r}(n) = m!: {sol.solutions}, prime {sol.certifying_prime}, bound m0={sol.search_bound_m}")
    print("D_2(n) = p^k:", diophantine.solve_prime_power_r2(10**4).solutions)


if __name__ == "__main__":
    main()
