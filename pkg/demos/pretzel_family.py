#!/usr/bin/env python3
"""Tour of the pretzel-family tools: the recurrence, its matrix-product
cross-check, the bundled reference table, divisibility structure, and the
rotated-circle variant whose solutions all land in Q(i).

    python3 demos/pretzel_family.py
"""

from ttfal import (divisibility_scan, falr_omega1_roots, irreducibility_screen,
                   reconstruct_gaussian, table_form, ttpoly_falp,
                   ttpoly_falp_direct, verify_table1)


def main():
    print("polynomials from the recurrence (cleared form):")
    for n in range(3, 9):
        pp = ttpoly_falp(n)
        same = pp.poly == ttpoly_falp_direct(n).poly
        print("  n=%-2d %-44s matrix product agrees: %s"
              % (n, table_form(pp), same))

    print("\nbundled reference table, rows 3..17:")
    for row in verify_table1():
        print("  n=%-2d match=%-5s bold=%s"
              % (row["n"], row["matches"], row["bold_check"]))

    print("\ndivisibility up to 17 (C_m | C_n):")
    scan = divisibility_scan(17)
    pairs = sorted(k for k, holds in scan.divides.items() if holds)
    print("  " + ", ".join("(%d,%d)" % p for p in pairs))
    print("  violations of the index-divisibility pattern:",
          scan.violations or "none")

    print("\nirreducibility screens:")
    for n in (5, 6, 7, 9, 11):
        print("  n=%-2d %s" % (n, irreducibility_screen(n)))

    print("\nrotated crossing circle: omega_1 for each family size")
    for n in range(3, 9):
        for root in falr_omega1_roots(n):
            exact = reconstruct_gaussian(root)
            print("  n=%-2d omega_1 = %s" % (n, exact))


if __name__ == "__main__":
    main()
