#!/usr/bin/env python3
"""Walk one bundled diagram through every pipeline stage, printing as it goes.

    python3 demos/solve_walkthrough.py [name]

where name is one of the bundled diagrams (default: borromean).
"""

import sys

from ttfal import (apply_fal_labeling, assemble_system, cusp_shapes,
                   data_file, eliminate, find_roots, parse_diagram,
                   poly_text, select_geometric, verify_solution)


def main():
    name = sys.argv[1] if len(sys.argv) > 1 else "borromean"
    with open(data_file(name + ".json"), encoding="utf-8") as fh:
        d = parse_diagram(fh.read())
    print("diagram %r: %d faces, %d crossing circles, %d plain components"
          % (name, len(d.faces), len(d.circles), len(d.components)))

    labeled = d if d.generic else apply_fal_labeling(d)
    system = assemble_system(labeled)
    print("\nface equations (%d, plus %d side conditions):"
          % (len(system.equations), len(system.side_conditions)))
    for eq in system.equations:
        print("  %s = 0" % eq)

    target = d.variables[0]
    rep = eliminate(system, target)
    cleared, _ = rep.tt_poly.integer_cleared()
    print("\neliminated down to %r: %s = 0" % (target, poly_text(cleared)))

    roots = find_roots(rep.tt_poly)
    print("roots:", ", ".join("%g%+gi" % (z.real, z.imag) for z in roots))

    pick = select_geometric(rep, roots, labeled)
    values = rep.assignment_at(roots[pick])
    print("geometric root: index %d" % pick)
    print("\nlabels there:")
    for v in d.variables:
        z = values[v]
        print("  %s = %g%+gi" % (v, z.real, z.imag))

    check = verify_solution(labeled, values)
    print("\nregion products scalar:", "yes" if check.passed else "NO")
    print("cusp shapes:")
    for r in cusp_shapes(labeled, values):
        z = r.shape
        print("  %-10s %g%+gi  (%s)" % (r.cusp_id, z.real, z.imag,
                                        r.formula_used))


if __name__ == "__main__":
    main()
