"""System reduction to one variable, root finding and root selection.

eliminate() repeatedly substitutes variables that occur linearly (the
dominant case by far), divides off factors already known nonzero, and
falls back to bivariate resultants only when stuck. The result is a
squarefree polynomial in the chosen target variable plus an ordered
recipe recovering every other label from a root.
"""

from __future__ import annotations

import cmath
import os
import warnings as _warnings

from .arith import GaussianRational, MultiPoly, UniPoly
from .cusp import cusp_shapes
from .diagram import FALDiagram, apply_fal_labeling
from .equations import TTSystem, assemble_system, region_matrix

_ONE = GaussianRational(1)


class EliminationStuck(Exception):
    """No linear step, no lone variable, no usable resultant."""


class InconsistentSystem(Exception):
    """A nonzero constant equation (or vanished side condition) appeared."""


class NonConvergence(Exception):
    """Root iteration missed the residual bound; carries partial roots."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


class NoGeometricRoot(Exception):
    """No root passed the geometric (or reference) selection criterion."""


class AmbiguousGeometric(UserWarning):
    """Several roots pass selection; the canonical first one is chosen."""


class EliminationResult:
    """A one-variable polynomial plus the label recovery recipe.

    back_substitution is in evaluation order. Entries are
    ("rational", var, num, den) with num/den UniPoly in the target,
    ("ratio", var, num, den) with MultiPoly parts evaluated numerically,
    or ("implicit", var, eq) solved numerically for var at each root.
    """

    __slots__ = ("target", "tt_poly", "back_substitution", "side_conditions",
                 "warnings", "multiplicity_dropped")

    def __init__(self, target, tt_poly, back_substitution, side_conditions,
                 warnings, multiplicity_dropped):
        self.target = target
        self.tt_poly = tt_poly
        self.back_substitution = list(back_substitution)
        self.side_conditions = list(side_conditions)
        self.warnings = list(warnings)
        self.multiplicity_dropped = multiplicity_dropped

    def assignment_at(self, root):
        """Values of every recovered label at one root of tt_poly."""
        values = {self.target: complex(root)}
        for entry in self.back_substitution:
            kind, var = entry[0], entry[1]
            if kind == "rational":
                num, den = entry[2], entry[3]
                d = den.eval(values[self.target])
                if d == 0:
                    raise ZeroDivisionError(
                        "denominator of %s vanishes at this root" % var)
                values[var] = num.eval(values[self.target]) / d
            elif kind == "ratio":
                num, den = entry[2], entry[3]
                d = den.eval_complex(values)
                if d == 0:
                    raise ZeroDivisionError(
                        "denominator of %s vanishes at this root" % var)
                values[var] = num.eval_complex(values) / d
            else:
                values[var] = _implicit_value(entry[2], var, values)
        return values

    def __repr__(self):
        return "EliminationResult(%s: %r)" % (self.target, self.tt_poly)


class SolutionReport:
    __slots__ = ("roots", "residuals", "assignments", "geometric_index",
                 "side_condition_violations", "warnings")

    def __init__(self, roots, residuals, assignments, geometric_index,
                 side_condition_violations, warnings):
        self.roots = list(roots)
        self.residuals = list(residuals)
        self.assignments = list(assignments)
        self.geometric_index = geometric_index
        self.side_condition_violations = list(side_condition_violations)
        self.warnings = list(warnings)


class ResidualReport:
    """Per-face region matrix deviation from a scalar multiple of I."""

    __slots__ = ("entries", "tol")

    def __init__(self, entries, tol):
        self.entries = list(entries)  # (face_id, off_diagonal, diag_mismatch)
        self.tol = tol

    @property
    def passed(self):
        return all(off <= self.tol and diag <= self.tol
                   for _, off, diag in self.entries)

    def __repr__(self):
        worst = max((max(o, d) for _, o, d in self.entries), default=0.0)
        return "ResidualReport(%s, worst %.3g)" % (
            "pass" if self.passed else "FAIL", worst)


def eliminate(sys: TTSystem, target: str) -> EliminationResult:
    eqs = list(sys.equations)
    side = list(sys.side_conditions)
    chain = []
    notes = []

    order = list(sys.variables)
    for e in eqs:
        for v in e.registry:
            if v not in order:
                order.append(v)
    if target not in order:
        raise EliminationStuck("target %r does not occur" % target)
    candidates = [v for v in order if v != target]

    for _ in range(4 * (len(order) + len(eqs)) + 16):
        eqs, side = _normalize(eqs, side)
        if all(e.variables_present() <= {target} for e in eqs):
            break
        if _linear_step(eqs, side, candidates, chain):
            continue
        if _lone_variable_step(eqs, candidates, chain, notes):
            continue
        if _resultant_step(eqs, candidates, target, notes):
            continue
        raise EliminationStuck("no linear, lone or resultant step applies; "
                               "%d equations left" % len(eqs))
    else:
        raise EliminationStuck("elimination did not terminate")

    univariate = []
    for e in eqs:
        univariate.append(UniPoly.from_multipoly(e, target))
    if not univariate:
        raise EliminationStuck("target %r ended up unconstrained" % target)
    g = univariate[0]
    for p in univariate[1:]:
        g = g.gcd(p)
    if g.degree < 1:
        raise InconsistentSystem("equations have no common root in %s" % target)
    reduced, lost = g.squarefree()
    if lost:
        notes.append("dropped root multiplicity %d during squarefree "
                     "reduction" % lost)
    tt_poly, _ = reduced.integer_cleared()
    back = _finalize_chain(chain, target, notes)
    return EliminationResult(target, tt_poly, back, side, notes, lost)


def _normalize(eqs, side):
    kept_side = []
    for s in side:
        if s.is_zero:
            raise InconsistentSystem("a side condition vanished identically")
        if s.is_constant():
            continue
        if s not in kept_side:
            kept_side.append(s)

    out = []
    for e in eqs:
        e = _strip_known_factors(e, kept_side)
        if e.is_zero:
            continue
        if e.is_constant():
            raise InconsistentSystem("%r = 0" % e.constant_term())
        if e not in out:
            out.append(e)
    return out, kept_side


def _strip_known_factors(e, side):
    changed = True
    while changed and not e.is_zero and not e.is_constant():
        changed = False
        for s in side:
            q = _exact_divide(e, s)
            if q is not None:
                e = q
                changed = True
                break
    return e


def _linear_step(eqs, side, candidates, chain):
    pick = None
    for want_constant in (True, False):
        for v in candidates:
            for i, e in enumerate(eqs):
                if e.degree_in(v) != 1:
                    continue
                cof = e.coefficients_in(v)
                a = cof[1]
                if a.is_constant() == want_constant:
                    pick = (v, i, a, cof.get(0, MultiPoly.const(0)))
                    break
            if pick:
                break
        if pick:
            break
    if not pick:
        return False
    v, i, a, b = pick
    num, den = -b, a
    chain.append(("sub", v, num, den))
    del eqs[i]
    if a.is_constant():
        repl = num * (_ONE / a.constant_term())
        eqs[:] = [e.substitute(v, repl) for e in eqs]
        side[:] = [s.substitute(v, repl) for s in side]
    else:
        if a not in side:
            side.append(a)
        eqs[:] = [_pseudo_substitute(e, v, num, den) for e in eqs]
        side[:] = [_pseudo_substitute(s, v, num, den) for s in side]
    candidates.remove(v)
    return True


def _lone_variable_step(eqs, candidates, chain, notes):
    for v in candidates:
        hits = [i for i, e in enumerate(eqs) if e.degree_in(v) > 0]
        if len(hits) != 1:
            continue
        e = eqs.pop(hits[0])
        deg = e.degree_in(v)
        if deg > 1:
            notes.append("label %s recovered from a degree-%d relation; "
                         "branch chosen per root" % (v, deg))
        chain.append(("implicit", v, e))
        candidates.remove(v)
        return True
    return False


def _resultant_step(eqs, candidates, target, notes):
    for v in candidates:
        hits = [i for i, e in enumerate(eqs) if e.degree_in(v) > 0]
        if len(hits) < 2:
            continue
        hits.sort(key=lambda i: (eqs[i].degree_in(v), eqs[i].total_degree()))
        i, j = hits[0], hits[1]
        r = _resultant(eqs[i], eqs[j], v)
        if r.is_zero:
            raise EliminationStuck(
                "resultant in %s vanished; equations share a component" % v)
        notes.append("resultant step eliminated %s; spurious factors "
                     "possible" % v)
        eqs[j] = r
        return True
    return False


def _pseudo_substitute(p, v, num, den):
    """p with v -> num/den, cleared by den**deg. Exact for polynomials."""
    deg = p.degree_in(v)
    if deg == 0:
        return p
    cof = p.coefficients_in(v)
    out = MultiPoly.const(0)
    for k in range(deg + 1):
        c = cof.get(k)
        if c is None or c.is_zero:
            continue
        out = out + c * num ** k * den ** (deg - k)
    return out


def _exact_divide(p, d):
    """Quotient p/d when the division is exact, else None."""
    if d.is_zero:
        return None
    if d.is_constant():
        return p * (_ONE / d.constant_term())
    if p.is_zero:
        return p
    v = None
    for name in d.registry:
        if d.degree_in(name) > 0:
            v = name
            break
    dd = d.degree_in(v)
    lead = d.coefficients_in(v)[dd]
    r = p
    q = MultiPoly.const(0)
    while not r.is_zero:
        k = r.degree_in(v)
        if k < dd:
            return None
        c = r.coefficients_in(v)[k]
        t = _exact_divide(c, lead)
        if t is None:
            return None
        t = t * MultiPoly.var(v) ** (k - dd)
        q = q + t
        r = r - t * d
        if not r.is_zero and r.degree_in(v) >= k:
            return None
    return q


def _resultant(p, q, v):
    """Sylvester resultant of p and q with respect to v."""
    dp, dq = p.degree_in(v), q.degree_in(v)
    cp, cq = p.coefficients_in(v), q.coefficients_in(v)
    zero = MultiPoly.const(0)
    n = dp + dq
    rows = []
    for shift in range(dq):
        rows.append([cp.get(dp - (c - shift), zero)
                     if 0 <= c - shift <= dp else zero for c in range(n)])
    for shift in range(dp):
        rows.append([cq.get(dq - (c - shift), zero)
                     if 0 <= c - shift <= dq else zero for c in range(n)])
    return _det(rows)


def _det(rows):
    n = len(rows)
    cache = {}

    def minor(r, cols):
        if r == n:
            return MultiPoly.const(1)
        key = (r, cols)
        if key in cache:
            return cache[key]
        total = MultiPoly.const(0)
        sign = 1
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if not entry.is_zero:
                sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
                term = entry * sub
                total = total + (term if sign > 0 else -term)
            sign = -sign
        cache[key] = total
        return total

    return minor(0, tuple(range(n)))


def _finalize_chain(chain, target, notes):
    """Reverse the elimination order into evaluation order, turning each
    substitution into a rational pair in the target where possible."""
    pairs = {}
    back = []
    for entry in reversed(chain):
        if entry[0] == "implicit":
            back.append(entry)
            continue
        _, v, num_mp, den_mp = entry
        num_pair = _rationalize(num_mp, pairs, target)
        den_pair = _rationalize(den_mp, pairs, target)
        if num_pair is None or den_pair is None:
            back.append(("ratio", v, num_mp, den_mp))
            continue
        num = num_pair[0] * den_pair[1]
        den = num_pair[1] * den_pair[0]
        if den.is_zero:
            raise InconsistentSystem("label %s received a zero denominator" % v)
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead = den.leading()
        num = num * (_ONE / lead)
        den = den * (_ONE / lead)
        pairs[v] = (num, den)
        back.append(("rational", v, num, den))
    return back


def _rationalize(mp, pairs, target):
    """mp as a UniPoly fraction in target, or None if it needs a variable
    that only has a numeric recipe."""
    num = mp
    den = UniPoly([1], target)
    while True:
        extra = sorted(num.variables_present() - {target})
        if not extra:
            break
        v = extra[0]
        if v not in pairs:
            return None
        nv, dv = pairs[v]
        deg = num.degree_in(v)
        num = _pseudo_substitute(num, v, _uni_to_multi(nv), _uni_to_multi(dv))
        den = den * dv ** deg
    return UniPoly.from_multipoly(num, target), den


def _uni_to_multi(u):
    out = MultiPoly.const(0)
    v = MultiPoly.var(u.var)
    for k, c in enumerate(u.coeffs):
        out = out + v ** k * c
    return out


def _implicit_value(eq, var, values):
    cof = eq.coefficients_in(var)
    deg = max(cof)
    coeffs = [0j] * (deg + 1)
    known = dict(values)
    for k, c in cof.items():
        coeffs[k] = c.eval_complex(known)
    while coeffs and abs(coeffs[-1]) == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise ZeroDivisionError(
            "relation for %s degenerates at this root" % var)
    roots = _roots_complex(coeffs)
    roots.sort(key=lambda z: (z.real, z.imag))
    return roots[0]


def _max_iters():
    return int(os.environ.get("TTFAL_MAX_ITERS", "500"))


def _roots_complex(coeffs):
    """All roots of sum(coeffs[k] x^k), coeffs complex, leading nonzero."""
    roots = []
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[0] == 0:
        roots.append(0j)
        coeffs.pop(0)
    n = len(coeffs) - 1
    if n < 1:
        return roots
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    if n == 1:
        roots.append(-monic[0])
        return roots

    radius = 1.0 + max(abs(c) for c in monic[:-1])
    zs = [radius * cmath.exp(1j * (0.4 / n + 2 * cmath.pi * k / n))
          for k in range(n)]

    def peval(z):
        acc = 0j
        for c in reversed(monic):
            acc = acc * z + c
        return acc

    limit = _max_iters()
    for _ in range(limit):
        moved = 0.0
        for k in range(n):
            z = zs[k]
            denom = 1.0 + 0j
            for j in range(n):
                if j != k:
                    denom *= z - zs[j]
            if denom == 0:
                denom = 1e-30
            step = peval(z) / denom
            zs[k] = z - step
            moved = max(moved, abs(step))
        if moved <= 1e-14 * (1.0 + radius):
            break

    # Newton polish against the same monic form
    deriv = [monic[k] * k for k in range(1, n + 1)]

    def deval(z):
        acc = 0j
        for c in reversed(deriv):
            acc = acc * z + c
        return acc

    for k in range(n):
        z = zs[k]
        for _ in range(40):
            dz = deval(z)
            if dz == 0:
                break
            step = peval(z) / dz
            z -= step
            if abs(step) <= 1e-16 * (1.0 + abs(z)):
                break
        zs[k] = z

    roots.extend(zs)
    return roots


def find_roots(p: UniPoly, tol: float = 1e-12) -> list:
    """All complex roots, each with backward error at most tol.

    The acceptance bound scales with sum(|c_k| |root|^k), so tol bounds
    the relative coefficient perturbation under which the root is exact;
    a bound independent of coefficient size is unreachable in floats.
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1 to have roots")
    coeffs = [c.to_complex() for c in p.coeffs]
    roots = _roots_complex(coeffs)
    bad = []
    for r in roots:
        scale = sum(abs(c) * abs(r) ** k for k, c in enumerate(coeffs))
        if abs(p.eval(r)) > tol * max(scale, 1.0):
            bad.append(r)
    if bad:
        raise NonConvergence("%d of %d roots exceeded the residual bound"
                             % (len(bad), len(roots)), roots)
    roots.sort(key=lambda z: (z.real, z.imag))
    return roots


def select_geometric(rep: EliminationResult, roots, d: FALDiagram,
                     reference=None, tol=None, warnings=None):
    """Index of the geometric root.

    Without a reference: the root whose crossing-circle cusp shapes all
    have positive imaginary part. With a reference map {cusp id: shape},
    the root minimizing the worst per-cusp deviation, required <= tol.
    """
    sink = warnings if warnings is not None else []
    usable = []
    for i, root in enumerate(roots):
        try:
            usable.append((i, rep.assignment_at(root)))
        except ZeroDivisionError:
            continue

    if reference is not None:
        tol = 1e-6 if tol is None else tol
        best = None
        for i, values in usable:
            try:
                shapes = {r.cusp_id: r.shape for r in cusp_shapes(d, values)}
            except ZeroDivisionError:
                continue
            missing = [cid for cid in reference if cid not in shapes]
            if missing:
                raise NoGeometricRoot("reference names unknown cusps %s"
                                      % sorted(missing))
            dev = max(abs(shapes[cid] - complex(*_as_pair(reference[cid])))
                      for cid in reference)
            if best is None or dev < best[1]:
                best = (i, dev)
        if best is None or best[1] > tol:
            raise NoGeometricRoot("no root matches the reference cusp shapes"
                                  " within %g" % tol)
        return best[0]

    passing = []
    for i, values in usable:
        if not d.circles:
            continue
        try:
            shapes = cusp_shapes(FALDiagram(d.generic, d.variables, [],
                                            d.circles, []), values)
        except ZeroDivisionError:
            continue
        if all(r.shape.imag > 0 for r in shapes):
            passing.append(i)
    if not passing:
        if not d.circles:
            raise NoGeometricRoot("diagram has no crossing circles; supply "
                                  "a reference cusp assignment")
        raise NoGeometricRoot("no root gives positive-imaginary cusp shapes")
    passing.sort(key=lambda i: (roots[i].real, roots[i].imag))
    if len(passing) > 1:
        msg = ("%d roots pass the geometric criterion; keeping root %d"
               % (len(passing), passing[0]))
        sink.append(msg)
        _warnings.warn(msg, AmbiguousGeometric)
    return passing[0]


def _as_pair(v):
    if isinstance(v, complex):
        return (v.real, v.imag)
    return (v[0], v[1])


def verify_solution(d: FALDiagram, assignment, tol: float = 1e-9) -> ResidualReport:
    """Region matrix of every face must be scalar at the assignment."""
    entries = []
    for f in d.faces:
        m = region_matrix(f)
        e11 = m.e11.eval_complex(assignment)
        e12 = m.e12.eval_complex(assignment)
        e21 = m.e21.eval_complex(assignment)
        e22 = m.e22.eval_complex(assignment)
        entries.append((f.id, max(abs(e12), abs(e21)), abs(e11 - e22)))
    return ResidualReport(entries, tol)


def solve_diagram(d: FALDiagram, target: str = None, reference=None,
                  tol: float = 1e-9):
    """Full pipeline from a parsed diagram to a solution report."""
    labeled = d if d.generic else apply_fal_labeling(d)
    system = assemble_system(labeled)
    if target is None:
        if not d.variables:
            raise EliminationStuck("diagram declares no variables")
        target = d.variables[0]
    rep = eliminate(system, target)
    warnings = list(rep.warnings)
    roots = find_roots(rep.tt_poly)

    residuals, assignments, violations = [], [], []
    for root in roots:
        try:
            values = rep.assignment_at(root)
        except ZeroDivisionError as e:
            assignments.append(None)
            residuals.append(float("inf"))
            violations.append(True)
            warnings.append("root %r dropped: %s" % (root, e))
            continue
        assignments.append(values)
        residuals.append(max((abs(eq.eval_complex(values))
                              for eq in system.equations), default=0.0))
        conditions = system.side_conditions + [
            s for s in rep.side_conditions if not s.is_constant()]
        violations.append(any(abs(s.eval_complex(values)) <= tol
                              for s in conditions))

    keep = [i for i in range(len(roots)) if not violations[i]]
    if not keep:
        raise NoGeometricRoot("every root violates a side condition")
    kept_roots = [roots[i] for i in keep]
    sub = select_geometric(rep, kept_roots, d, reference=reference,
                           warnings=warnings)
    geometric_index = keep[sub]
    return rep, SolutionReport(roots, residuals, assignments,
                               geometric_index, violations, warnings)
