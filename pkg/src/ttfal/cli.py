"""Command-line front end.

Three subcommands: `solve` runs the full pipeline on a diagram file and
emits a JSON report, `cusps` does the same but reports cusp shapes for a
chosen root, and `pretzel` prints the pretzel-family polynomial with
optional cross-checks. Reports go to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 residual or convergence failure, 2 unreadable
or malformed input, 3 elimination failure, 4 no geometric root.
"""

import argparse
import hashlib
import json
import sys

from .arith import UniPoly, poly_text
from .cusp import DivisionByZero, cusp_shapes
from .diagram import DiagramError, apply_fal_labeling, parse_diagram
from .equations import DegenerateFace, assemble_system
from .pretzel import (divisibility_scan, table_form, ttpoly_falp,
                      ttpoly_falp_direct, verify_table1)
from .solve import (EliminationStuck, InconsistentSystem, NoGeometricRoot,
                    NonConvergence, eliminate, find_roots, select_geometric,
                    verify_solution)

EXIT_OK = 0
EXIT_RESIDUAL = 1
EXIT_INPUT = 2
EXIT_ELIMINATE = 3
EXIT_NO_GEOMETRIC = 4


def _sig(v):
    """Round to 12 significant digits for stable report output."""
    return float("%.12g" % v)


def _pair(z):
    z = complex(z)
    return [_sig(z.real), _sig(z.imag)]


def _fail(message, code):
    print(message, file=sys.stderr)
    return code


def _emit(report):
    sys.stdout.write(json.dumps(report, ensure_ascii=False, indent=2) + "\n")


def _read_diagram(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    return parse_diagram(raw.decode("utf-8")), hashlib.sha256(raw).hexdigest()


def _pipeline(d, digest, target, reference, tol):
    """Everything shared by `solve` and `cusps`: eliminate, find and
    screen roots, attempt geometric selection. Returns the report dict
    (geometric may be None) plus the per-root assignments."""
    labeled = d if d.generic else apply_fal_labeling(d)
    system = assemble_system(labeled)
    if target is None:
        target = d.variables[0]
    rep = eliminate(system, target)
    if rep.tt_poly.degree < 1:
        raise EliminationStuck("eliminated to a constant polynomial")
    warnings = list(rep.warnings)
    if rep.multiplicity_dropped:
        warnings.append("squarefree reduction dropped multiplicity %d"
                        % rep.multiplicity_dropped)
    roots = find_roots(rep.tt_poly)

    assignments, rows, kept = [], [], []
    for i, root in enumerate(roots):
        row = {"value": _pair(root), "residual": None, "excluded": False}
        try:
            values = rep.assignment_at(root)
        except ZeroDivisionError as e:
            row["excluded"] = True
            warnings.append("root %d pruned: %s" % (i, e))
            assignments.append(None)
            rows.append(row)
            continue
        assignments.append(values)
        row["residual"] = _sig(max((abs(eq.eval_complex(values))
                                    for eq in system.equations), default=0.0))
        conditions = system.side_conditions + [
            s for s in rep.side_conditions if not s.is_constant()]
        if any(abs(s.eval_complex(values)) <= tol for s in conditions):
            row["excluded"] = True
            warnings.append("root %d pruned: side condition vanishes" % i)
        else:
            kept.append(i)
        rows.append(row)

    geometric = None
    if kept:
        try:
            sub = select_geometric(rep, [roots[i] for i in kept], labeled,
                                   reference=reference, tol=None, warnings=warnings)
            geometric = kept[sub]
        except NoGeometricRoot as e:
            warnings.append(str(e))
    else:
        warnings.append("every root violates a side condition")

    cleared, _ = rep.tt_poly.integer_cleared()
    report = {
        "input": "sha256:" + digest,
        "target": target,
        "tt_poly": poly_text(UniPoly(cleared.coeffs, "x"), "*"),
        "roots": rows,
        "geometric": None if geometric is None else
                     {"index": geometric, "value": _pair(roots[geometric])},
        "cusps": [],
        "warnings": warnings,
    }
    return report, labeled, assignments, geometric


def _cusp_rows(d, values):
    return [{"id": r.cusp_id, "shape": _pair(r.shape),
             "formula": r.formula_used}
            for r in cusp_shapes(d, values)]


def _load_reference(path):
    with open(path, "rb") as fh:
        ref = json.loads(fh.read().decode("utf-8"))
    if not isinstance(ref, dict):
        raise ValueError("reference must be a JSON object of cusp id -> [re, im]")
    for k, v in ref.items():
        if not (isinstance(v, list) and len(v) == 2):
            raise ValueError("reference entry %r is not an [re, im] pair" % k)
    return ref


def cmd_solve(args):
    try:
        d, digest = _read_diagram(args.file)
        reference = _load_reference(args.reference) if args.reference else None
    except (OSError, ValueError) as e:
        return _fail("cannot read input: %s" % e, EXIT_INPUT)

    try:
        report, labeled, assignments, geometric = _pipeline(
            d, digest, args.target, reference, args.tol)
    except (EliminationStuck, InconsistentSystem) as e:
        return _fail("elimination failed: %s" % e, EXIT_ELIMINATE)
    except (DegenerateFace, ValueError) as e:
        return _fail("cannot assemble equations: %s" % e, EXIT_INPUT)
    except NonConvergence as e:
        return _fail("root finding did not converge: %s" % e, EXIT_RESIDUAL)

    if geometric is None:
        _emit(report)
        return _fail("no geometric root", EXIT_NO_GEOMETRIC)

    values = assignments[geometric]
    try:
        report["cusps"] = _cusp_rows(labeled, values)
    except (DivisionByZero, ZeroDivisionError, KeyError) as e:
        report["warnings"].append("cusp shapes unavailable: %s" % e)
    check = verify_solution(labeled, values, tol=args.tol)
    _emit(report)
    if not check.passed:
        return _fail("region products exceed tolerance %g" % args.tol,
                     EXIT_RESIDUAL)
    return EXIT_OK


def cmd_cusps(args):
    try:
        d, digest = _read_diagram(args.file)
    except (OSError, ValueError) as e:
        return _fail("cannot read input: %s" % e, EXIT_INPUT)

    try:
        report, labeled, assignments, geometric = _pipeline(
            d, digest, None, None, 1e-9)
    except (EliminationStuck, InconsistentSystem) as e:
        return _fail("elimination failed: %s" % e, EXIT_ELIMINATE)
    except (DegenerateFace, ValueError) as e:
        return _fail("cannot assemble equations: %s" % e, EXIT_INPUT)
    except NonConvergence as e:
        return _fail("root finding did not converge: %s" % e, EXIT_RESIDUAL)

    index = args.root_index
    if index is None:
        if geometric is None:
            _emit(report)
            return _fail("no geometric root; pass --root-index to pick one",
                         EXIT_NO_GEOMETRIC)
        index = geometric
    elif not 0 <= index < len(assignments):
        return _fail("--root-index out of range (have %d roots)"
                     % len(assignments), EXIT_INPUT)

    values = assignments[index]
    if values is None:
        _emit(report)
        return _fail("root %d has no label assignment" % index, EXIT_RESIDUAL)
    try:
        report["cusps"] = _cusp_rows(labeled, values)
    except (DivisionByZero, ZeroDivisionError, KeyError) as e:
        _emit(report)
        return _fail("cusp shapes unavailable: %s" % e, EXIT_RESIDUAL)
    report["root_index"] = index
    _emit(report)
    return EXIT_OK


def cmd_pretzel(args):
    try:
        pp = ttpoly_falp(args.n)
        lines = [table_form(pp)]
        if args.direct:
            same = pp.poly == ttpoly_falp_direct(args.n).poly
            lines.append("recurrence == direct: %s" % ("true" if same else "false"))
        if args.scan_div is not None:
            scan = divisibility_scan(args.scan_div)
            for (m, n), holds in sorted(scan.divides.items()):
                if holds:
                    lines.append("C_%d | C_%d" % (m, n))
            if scan.violations:
                for m, n in scan.violations:
                    lines.append("divisibility anomaly at (%d, %d)" % (m, n))
            else:
                lines.append("violations: none")
        if args.verify_table:
            for row in verify_table1():
                lines.append("n=%d match=%s bold=%s"
                             % (row["n"], "true" if row["matches"] else "false",
                                row["bold_check"]))
    except ValueError as e:
        return _fail(str(e), EXIT_INPUT)
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _parser():
    p = argparse.ArgumentParser(
        prog="ttfal",
        description="Intercusp equation systems and cusp shapes for "
                    "fully augmented link diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="run the full pipeline on a diagram file")
    ps.add_argument("file")
    ps.add_argument("--target", help="variable to eliminate down to "
                                     "(default: first declared)")
    ps.add_argument("--tol", type=float, default=1e-9)
    ps.add_argument("--reference",
                    help="JSON file of cusp id -> [re, im] used to pick "
                         "the geometric root")
    ps.set_defaults(run=cmd_solve)

    pc = sub.add_parser("cusps", help="report cusp shapes at a chosen root")
    pc.add_argument("file")
    pc.add_argument("--root-index", type=int,
                    help="use this root instead of the geometric one")
    pc.set_defaults(run=cmd_cusps)

    pp = sub.add_parser("pretzel", help="pretzel-family polynomial tools")
    pp.add_argument("--n", type=int, required=True)
    pp.add_argument("--direct", action="store_true",
                    help="cross-check the recurrence against the matrix product")
    pp.add_argument("--scan-div", type=int, metavar="M",
                    help="print the divisibility containments up to C_M")
    pp.add_argument("--verify-table", action="store_true",
                    help="check every row of the bundled reference table")
    pp.set_defaults(run=cmd_pretzel)
    return p


def main(argv=None):
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else EXIT_INPUT
    try:
        return args.run(args)
    except DiagramError as e:
        return _fail("bad diagram: %s" % e, EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
