"""Cusp shapes from a solved label assignment.

A crossing circle without a half-twist has cusp shape 4*omega; with a
half-twist the shape is 4*omega/(1+2*omega) (right) or 4*omega/(1-2*omega)
(left). A projection-plane component sums its signed edge labels, minus
k/2 per half-twist pass with the supplied shear sign.
"""

from __future__ import annotations

from .arith import ComplexF, UniPoly
from .diagram import FALDiagram, ProjectionComponent


class DivisionByZero(ZeroDivisionError):
    """1 +/- 2*omega vanished in a half-twist cusp formula."""


class CuspShapeResult:
    __slots__ = ("cusp_id", "shape", "formula_used")

    def __init__(self, cusp_id, shape, formula_used):
        self.cusp_id = cusp_id
        self.shape = shape
        self.formula_used = formula_used

    def __repr__(self):
        return "CuspShapeResult(%r, %r, %s)" % (self.cusp_id, self.shape,
                                                self.formula_used)


def cusp_shape_circle(omega: ComplexF, half_twist: str = "none") -> ComplexF:
    if half_twist == "none":
        return 4 * omega
    if half_twist == "right":
        den = 1 + 2 * omega
    elif half_twist == "left":
        den = 1 - 2 * omega
    else:
        raise ValueError("half_twist must be 'none', 'right' or 'left'")
    if den == 0:
        raise DivisionByZero("cusp formula pole at omega = %r" % omega)
    return 4 * omega / den


def cusp_shape_projection(c: ProjectionComponent, assignment) -> ComplexF:
    total = 0j
    for var, sign in c.edge_terms:
        if var not in assignment:
            raise KeyError("no value assigned for variable %r" % var)
        total += sign * assignment[var]
    return total - c.half_twist_passes * 0.5 * c.half_twist_sign


_FORMULA = {"none": "no-twist", "right": "rh-twist", "left": "lh-twist"}


def cusp_shapes(d: FALDiagram, assignment) -> list:
    """All cusp shapes of a diagram: circles first, then components."""
    out = []
    for c in d.circles:
        if c.omega_var not in assignment:
            raise KeyError("no value assigned for variable %r" % c.omega_var)
        shape = cusp_shape_circle(assignment[c.omega_var], c.half_twist)
        out.append(CuspShapeResult(c.id, shape, _FORMULA[c.half_twist]))
    for p in d.components:
        formula = "projection" if p.half_twist_passes == 0 else "projection-sheared"
        out.append(CuspShapeResult(p.id, cusp_shape_projection(p, assignment),
                                   formula))
    return out


class FieldMembership:
    """Outcome of both membership modes; truthy when either one holds."""

    __slots__ = ("root_proximity", "direct_eval")

    def __init__(self, root_proximity, direct_eval):
        self.root_proximity = root_proximity
        self.direct_eval = direct_eval

    def __bool__(self):
        return self.root_proximity or self.direct_eval

    def __repr__(self):
        return "FieldMembership(root_proximity=%s, direct_eval=%s)" % (
            self.root_proximity, self.direct_eval)


def check_field_membership(value: ComplexF, candidate: UniPoly,
                           tol: float = 1e-9) -> FieldMembership:
    """Is value (nearly) a root of candidate?

    Checks root proximity and the direct residual |candidate(value)|.
    This is deliberately weak: a value can lie in the field cut out by
    candidate without being one of its roots, and that case reports false.
    """
    if candidate.is_zero:
        raise ValueError("candidate polynomial is zero")
    scale = 1.0
    v = complex(value)
    for k, c in enumerate(candidate.coeffs):
        scale += abs(c.to_complex()) * max(1.0, abs(v)) ** k
    direct = abs(candidate.eval(v)) <= tol * scale
    proximity = False
    if candidate.degree >= 1:
        # imported here so the formula layer stays loadable without the solver
        from .solve import find_roots
        proximity = any(abs(r - v) <= tol for r in find_roots(candidate))
    return FieldMembership(proximity, direct)
