"""From labeled faces to polynomial equations.

Each crossing on a face boundary has a shape parameter
sign * label / (edge_before * edge_after). Three-sided faces set every
shape parameter to 1, four-sided faces set consecutive sums to 1, and
larger faces contribute the three scalar equations saying the boundary
matrix product is a multiple of the identity. All equations are cleared
of denominators; the cleared factors become nonvanishing side conditions.
"""

from __future__ import annotations

from .arith import Mat2, MultiPoly
from .diagram import Face, FALDiagram


class DegenerateFace(ValueError):
    """Face with fewer than three crossings; bigons collapse upstream."""


class ShapeParam:
    """sign * numerator / (before * after) at one crossing of a face."""

    __slots__ = ("numerator", "denominator", "sign")

    def __init__(self, numerator, denominator, sign):
        self.numerator = numerator
        self.denominator = denominator  # (edge before, edge after)
        self.sign = sign

    def eval_complex(self, assignment):
        before, after = self.denominator
        den = (before.to_multipoly().eval_complex(assignment)
               * after.to_multipoly().eval_complex(assignment))
        num = self.numerator.to_multipoly().eval_complex(assignment)
        return self.sign * num / den

    def __repr__(self):
        s = "" if self.sign > 0 else "-"
        return "%s(%r)/((%r)(%r))" % (s, self.numerator,
                                      self.denominator[0], self.denominator[1])


class TTSystem:
    """Polynomial system: equations = 0, side conditions != 0, plus the
    substitutions already performed during elimination."""

    __slots__ = ("equations", "side_conditions", "substitution_chain",
                 "variables")

    def __init__(self, equations, side_conditions, substitution_chain=(),
                 variables=()):
        self.equations = list(equations)
        self.side_conditions = list(side_conditions)
        self.substitution_chain = list(substitution_chain)
        self.variables = tuple(variables)

    def __repr__(self):
        return "TTSystem(%d equations, %d side conditions)" % (
            len(self.equations), len(self.side_conditions))


def shape_params(f: Face) -> list:
    """One ShapeParam per crossing, in boundary order.

    The sign is positive exactly when the two flanking edges run through
    the crossing the same way, which in travel terms means their stored
    directions differ.
    """
    if not f.alternates():
        raise ValueError("face %r does not alternate edge/crossing" % f.id)
    if f.sides < 3:
        raise DegenerateFace("face %r has %d crossings" % (f.id, f.sides))
    n = len(f.entries)
    out = []
    for i, entry in enumerate(f.entries):
        if entry.kind != "crossing":
            continue
        before = f.entries[(i - 1) % n]
        after = f.entries[(i + 1) % n]
        sign = 1 if before.direction != after.direction else -1
        out.append(ShapeParam(entry.expr, (before.expr, after.expr), sign))
    return out


def face_equations(f: Face):
    """Cleared equations for one face.

    Returns (equations, side_conditions) as MultiPoly lists. Three-sided:
    sign*num - before*after per crossing. Four-sided: the four cyclic
    consecutive-sum relations cleared over the three edges involved.
    Five or more: e12, e21, e11 - e22 of the boundary product.
    """
    params = shape_params(f)
    n = len(params)
    side = []
    for p in params:
        for expr in p.denominator:
            m = expr.to_multipoly()
            if not m.is_constant() and m not in side:
                side.append(m)

    if n == 3:
        eqs = []
        for p in params:
            before, after = p.denominator
            eqs.append(p.numerator.to_multipoly() * p.sign
                       - before.to_multipoly() * after.to_multipoly())
        return eqs, side

    if n == 4:
        eqs = []
        for i in range(4):
            a, b = params[i], params[(i + 1) % 4]
            # a.denominator[1] and b.denominator[0] are the shared edge
            d1 = a.denominator[0].to_multipoly()
            d2 = a.denominator[1].to_multipoly()
            d3 = b.denominator[1].to_multipoly()
            eqs.append(a.numerator.to_multipoly() * a.sign * d3
                       + b.numerator.to_multipoly() * b.sign * d1
                       - d1 * d2 * d3)
        return eqs, side

    m = region_matrix(f)
    return [m.e12, m.e21, m.e11 - m.e22], side


def region_matrix(f: Face, start: int = 0) -> Mat2:
    """Boundary product of crossing and directed-edge matrices.

    Starts at the given stored entry; a different start conjugates the
    product and leaves the scalar-identity condition unchanged.
    """
    if not f.alternates():
        raise ValueError("face %r does not alternate edge/crossing" % f.id)
    n = len(f.entries)
    m = Mat2.identity()
    for k in range(n):
        e = f.entries[(start + k) % n]
        p = e.expr.to_multipoly()
        if e.kind == "crossing":
            m = m * Mat2(MultiPoly.const(0), p, MultiPoly.const(1),
                         MultiPoly.const(0))
        else:
            m = m * Mat2(MultiPoly.const(1), p * e.sign, MultiPoly.const(0),
                         MultiPoly.const(1))
    return m


def assemble_system(d: FALDiagram) -> TTSystem:
    """Concatenate all face equations; deduplicate side conditions."""
    equations = []
    side = []
    for f in d.faces:
        eqs, conds = face_equations(f)
        equations.extend(eqs)
        for c in conds:
            if c not in side:
                side.append(c)
    return TTSystem(equations, side, (), d.variables)
