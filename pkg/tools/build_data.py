"""Regenerate the bundled diagram files under src/ttfal/data/.

Each diagram is constructed in code, pushed through the full pipeline,
and checked against its expected polynomial, labels and cusp shapes
before anything is written. Run from the repository root:

    python3 tools/build_data.py
"""

import cmath
import json
import math
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ttfal.arith import poly_text
from ttfal.diagram import (CrossingCircle, Face, FaceEntry, FALDiagram,
                           LabelExpr, ProjectionComponent, apply_fal_labeling,
                           parse_diagram, serialize_diagram, validate)
from ttfal.equations import region_matrix
from ttfal.cusp import cusp_shapes
from ttfal.solve import solve_diagram

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "ttfal", "data")


def ev(name, direction, coeff=1):
    return FaceEntry("edge", LabelExpr.var(name, coeff), direction)


def eu(direction):
    return FaceEntry("edge", LabelExpr.const(1), direction)


def eshift(name, direction):
    return FaceEntry("edge", LabelExpr(-1, {name: 1}), direction)


def cv(name, coeff=1):
    return FaceEntry("crossing", LabelExpr.var(name, coeff))


def cq(num, den):
    return FaceEntry("crossing", LabelExpr.const(Fraction(num, den)))


def borromean(half_twist=False):
    faces = [
        Face("aleph", [ev("u1", "with"), cv("w2"), eu("with"),
                       cv("w2"), ev("u2", "with"), cq(1, 4)]),
        Face("beth", [ev("u4", "with"), cv("w2", -1), eu("against"),
                      cv("w2", -1), ev("u3", "with"), cq(1, 4)]),
        Face("gimel", [ev("u2", "with"), cv("w1", -1), eu("against"),
                       cv("w1", -1), ev("u3", "with"), cq(1, 4)]),
    ]
    q1_slots = {"pair_a": [], "pair_b": [["gimel", 1], ["gimel", 3]],
                "sphere": [["aleph", 5], ["beth", 5]],
                "meridians": [["gimel", 2]]}
    q2_slots = {"pair_a": [["aleph", 1], ["aleph", 3]],
                "pair_b": [["beth", 1], ["beth", 3]],
                "sphere": [["gimel", 5]],
                "meridians": [["aleph", 2], ["beth", 2]]}
    q1 = CrossingCircle("q1", "w1", "left" if half_twist else "none",
                        "antiparallel", q1_slots)
    q2 = CrossingCircle("q2", "w2", "none", "antiparallel", q2_slots)
    circles = [q2, q1] if half_twist else [q1, q2]
    strand = ProjectionComponent(
        "strand", [["u1", -1], ["u2", -1], ["u3", -1], ["u4", -1]])
    return FALDiagram(False, ["u1", "u2", "u3", "u4", "w1", "w2"],
                      faces, circles, [strand])


def hamantash():
    faces = [
        Face("aleph", [ev("u1", "with"), cv("w1"), eu("against"),
                       cv("w1"), ev("u2", "with"), cv("w3"),
                       eu("against"), cv("w3")]),
        Face("beth", [ev("u4", "with"), cv("w1"), eu("against"),
                      cv("w1"), ev("u3", "with"), cv("w2"),
                      eu("against"), cv("w2")]),
        Face("gimel", [eu("with"), cv("w3"), ev("u6", "against"),
                       cv("w2"), eu("with"), cv("w2"),
                       ev("u5", "against"), cv("w3")]),
        Face("daleth", [eshift("u2", "with"), cv("w1"),
                        eshift("u4", "with"), cv("w2"),
                        eshift("u6", "with"), cv("w3")]),
    ]
    components = [
        ProjectionComponent("red", [["u1", 1], ["u2", 1]]),
        ProjectionComponent("blue", [["u3", 1], ["u4", 1]]),
        ProjectionComponent("green", [["u5", 1], ["u6", 1]]),
    ]
    return FALDiagram(True, ["w1", "w2", "w3", "u1", "u2", "u3",
                             "u4", "u5", "u6"], faces, [], components)


def fal41():
    faces = [
        Face("aleph", [eu("with"), cv("w1", -1), ev("u2", "against"),
                       cv("w2", -1), eu("with"), cv("w2", -1),
                       ev("u1", "against"), cv("w1", -1)]),
        Face("beth", [ev("u5", "with"), cq(-1, 4), ev("u3", "against"),
                      cv("w1"), eu("against"), cv("w1"),
                      ev("u4", "against"), cq(-1, 4)]),
        Face("gimel", [ev("u6", "with"), cq(-1, 4), ev("u8", "against"),
                       cq(-1, 4), ev("u7", "with"), cv("w2"),
                       eu("with"), cv("w2")]),
        Face("daleth", [ev("u4", "with"), cq(1, 4), ev("u1", "with"),
                        cq(1, 4), ev("u7", "with"), cv("w3", -1),
                        eu("against"), cv("w3", -1)]),
        Face("E", [eu("with"), cv("w4"), ev("u5", "with"),
                   cv("w3", -1), eu("against"), cv("w3", -1),
                   ev("u8", "with"), cv("w4")]),
    ]
    circles = [
        CrossingCircle("c1", "w1", "none", "antiparallel", {
            "pair_a": [["beth", 3], ["beth", 5]],
            "pair_b": [["aleph", 1], ["aleph", 7]],
            "sphere": [["daleth", 1]],
            "meridians": [["aleph", 0], ["beth", 4]]}),
        CrossingCircle("c2", "w2", "none", "antiparallel", {
            "pair_a": [["gimel", 5], ["gimel", 7]],
            "pair_b": [["aleph", 3], ["aleph", 5]],
            "sphere": [["daleth", 3]],
            "meridians": [["aleph", 4], ["gimel", 6]]}),
        CrossingCircle("c3", "w3", "none", "parallel", {
            "side_sign": -1,
            "pair_a": [["daleth", 5], ["daleth", 7]],
            "pair_b": [["E", 3], ["E", 5]],
            "sphere": [["beth", 7], ["gimel", 3]],
            "meridians": [["daleth", 6], ["E", 4]]}),
        CrossingCircle("c4", "w4", "none", "parallel", {
            "pair_a": [["E", 1], ["E", 7]],
            "pair_b": [],
            "sphere": [["beth", 1], ["gimel", 1]],
            "meridians": [["E", 0]]}),
    ]
    return FALDiagram(False, ["w1", "w2", "w3", "w4", "u1", "u2", "u3",
                              "u4", "u5", "u6", "u7", "u8"],
                      faces, circles, [])


def pretzel3(half_twist=False):
    faces = [
        Face("aleph", [ev("u1", "with"), cq(-1, 4), ev("u3", "against"),
                       cq(1, 4), ev("u2", "against"), cq(-1, 4)]),
        Face("beth", [ev("u6", "with"), cq(-1, 4), ev("u4", "against"),
                      cq(1, 4), ev("u5", "against"), cq(-1, 4)]),
        Face("gimel", [ev("u2", "with"), cv("w2", -1), eu("with"),
                       cv("w2", -1), ev("u4", "with"), cv("w1"),
                       eu("against"), cv("w1")]),
        Face("daleth", [ev("u3", "with"), cv("w2"), eu("against"),
                        cv("w2"), ev("u5", "with"), cv("w3", -1),
                        eu("with"), cv("w3", -1)]),
    ]
    circles = [
        CrossingCircle("p", "w1", "left" if half_twist else "none",
                       "parallel", {
                           "pair_a": [["gimel", 5], ["gimel", 7]],
                           "pair_b": [],
                           "sphere": [["aleph", 5], ["beth", 1]],
                           "meridians": [["gimel", 6]]}),
        CrossingCircle("n", "w2", "none", "antiparallel", {
            "pair_a": [["daleth", 1], ["daleth", 3]],
            "pair_b": [["gimel", 1], ["gimel", 3]],
            "sphere": [["aleph", 3], ["beth", 3]],
            "meridians": [["gimel", 2], ["daleth", 2]]}),
        CrossingCircle("m", "w3", "none", "parallel", {
            "side_sign": -1,
            "pair_a": [["daleth", 5], ["daleth", 7]],
            "pair_b": [],
            "sphere": [["aleph", 1], ["beth", 5]],
            "meridians": [["daleth", 6]]}),
    ]
    if half_twist:
        components = [
            ProjectionComponent("lightblue", [["u2", 1], ["u6", 1],
                                              ["u1", 1], ["u4", 1]], 4, 1),
            ProjectionComponent("pink", [["u3", 1], ["u5", 1]]),
        ]
    else:
        components = [
            ProjectionComponent("strand1", [["u1", 1], ["u6", 1]]),
            ProjectionComponent("strand2", [["u2", 1], ["u4", 1]]),
            ProjectionComponent("strand3", [["u3", 1], ["u5", 1]]),
        ]
    return FALDiagram(False, ["w1", "w2", "w3", "u1", "u2", "u3",
                              "u4", "u5", "u6"], faces, circles, components)


def check(d, name, reference=None, target=None):
    findings = validate(d)
    assert not findings, (name, findings)
    if not d.generic:
        labeled = apply_fal_labeling(d)
        assert labeled == d, "%s: labels are not the labeling fixed point" % name
    back = parse_diagram(serialize_diagram(d))
    assert back == d, "%s: serialize/parse round trip changed the diagram" % name

    rep, report = solve_diagram(d, target=target, reference=reference)
    root = report.roots[report.geometric_index]
    assign = report.assignments[report.geometric_index]
    print("== %s" % name)
    print("  target %s  tt %s" % (rep.target, poly_text(rep.tt_poly)))
    print("  roots %r  geometric #%d = %r" %
          (report.roots, report.geometric_index, root))
    print("  residual %.3g" % report.residuals[report.geometric_index])
    print("  warnings %r" % (report.warnings + rep.warnings,))

    base = apply_fal_labeling(d) if not d.generic else d
    worst = 0.0
    for f in base.faces:
        m = region_matrix(f)
        e11 = m.e11.eval_complex(assign)
        e12 = m.e12.eval_complex(assign)
        e21 = m.e21.eval_complex(assign)
        e22 = m.e22.eval_complex(assign)
        off = max(abs(e12), abs(e21), abs(e11 - e22))
        worst = max(worst, off)
        print("  face %-7s scalar %r  off-identity %.3g" % (f.id, e11, off))
    assert worst < 1e-9, "%s: boundary product not scalar" % name

    shapes = cusp_shapes(d, assign)
    for s in shapes:
        print("  cusp %-10s %r  (%s)" % (s.cusp_id, s.shape, s.formula_used))
        assert s.shape.imag > 0, "%s: cusp %s has Im <= 0" % (name, s.cusp_id)
    return assign, shapes


def write(name, text):
    path = os.path.join(OUT_DIR, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    print("  wrote %s" % os.path.relpath(path))


def main():
    os.makedirs(OUT_DIR, exist_ok=True)

    d = borromean()
    check(d, "borromean")
    write("borromean.json", serialize_diagram(d))

    d = borromean(half_twist=True)
    check(d, "borromean-ht")
    write("borromean-ht.json", serialize_diagram(d))

    root = complex(0.375, math.sqrt(7) / 8)
    reference = {"red": 4 * root, "blue": 4 * root, "green": 4 * root}
    d = hamantash()
    check(d, "hamantash", reference=reference)
    write("hamantash.json", serialize_diagram(d))
    ref_json = {k: [v.real, v.imag] for k, v in reference.items()}
    write("hamantash-reference.json",
          json.dumps(ref_json, indent=2) + "\n")

    d = fal41()
    check(d, "fal41")
    write("fal41.json", serialize_diagram(d))

    d = pretzel3()
    check(d, "3-pretzel")
    write("3-pretzel.json", serialize_diagram(d))

    d = pretzel3(half_twist=True)
    check(d, "3-pretzel-ht")
    write("3-pretzel-ht.json", serialize_diagram(d))

    print("all bundled diagrams verified")


if __name__ == "__main__":
    main()
