"""Combinatorial data model for labeled augmented-link diagrams.

A diagram is a list of faces, each a cyclic alternating sequence of edge
and crossing labels, plus crossing-circle records and projection-plane
components. Labels are affine expressions so that forms like "-1+u6" or
the constant 1/4 fit in one type. Inputs carry the already flattened
combinatorics; nothing here knows about planar embeddings.

Crossing-circle records tag where their labels sit via "slots": lists of
[face_id, entry_index] references grouped as pair_a / pair_b (the two
bigon sides), sphere (the disc-plane crossing), meridians (constant-1
arcs) and half_edges (the two half-unit edges on hexagon faces). The
optional per-circle "side_sign" flips which side carries +omega; the
relabeling rules themselves do not change.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arith import GaussianRational, MultiPoly

_QUARTER = GaussianRational(Fraction(1, 4))
_HALF = GaussianRational(Fraction(1, 2))


class DiagramError(ValueError):
    """Raised for malformed or inconsistent diagram input."""


class Finding:
    """One validation problem: a rule code plus where it applies."""

    __slots__ = ("code", "where", "detail")

    def __init__(self, code, where, detail=""):
        self.code = code
        self.where = where
        self.detail = detail

    def __repr__(self):
        tail = ": " + self.detail if self.detail else ""
        return "[%s at %s%s]" % (self.code, self.where, tail)

    def __eq__(self, other):
        return (isinstance(other, Finding) and self.code == other.code
                and self.where == other.where)


class LabelExpr:
    """Affine label: constant + sum of coeff*var, degree at most one."""

    __slots__ = ("constant", "terms")

    def __init__(self, constant=0, terms=None):
        if not isinstance(constant, GaussianRational):
            constant = GaussianRational(constant)
        self.constant = constant
        clean = {}
        for v, c in (terms or {}).items():
            if not isinstance(c, GaussianRational):
                c = GaussianRational(c)
            if not c.is_zero:
                clean[v] = c
        self.terms = clean

    @classmethod
    def const(cls, c):
        return cls(c, {})

    @classmethod
    def var(cls, name, coeff=1):
        return cls(0, {name: coeff})

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "const" not in obj:
            raise DiagramError("label expression needs a 'const' quadruple")
        try:
            constant = GaussianRational.from_quad(obj["const"])
            terms = {v: GaussianRational.from_quad(q)
                     for v, q in obj.get("terms", {}).items()}
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise DiagramError("bad rational in label expression: %s" % e)
        return cls(constant, terms)

    def to_json(self):
        out = {"const": self.constant.to_quad()}
        if self.terms:
            out["terms"] = {v: self.terms[v].to_quad()
                            for v in sorted(self.terms)}
        return out

    def to_multipoly(self) -> MultiPoly:
        p = MultiPoly.const(self.constant)
        for v, c in sorted(self.terms.items()):
            p = p + MultiPoly.var(v, c)
        return p

    @property
    def is_constant(self):
        return not self.terms

    def variables(self):
        return set(self.terms)

    def __neg__(self):
        return LabelExpr(-self.constant, {v: -c for v, c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, LabelExpr) and self.constant == other.constant
                and self.terms == other.terms)

    def __repr__(self):
        parts = [] if self.constant.is_zero else [repr(self.constant)]
        for v in sorted(self.terms):
            c = self.terms[v]
            parts.append(v if c == GaussianRational(1)
                         else "-" + v if c == GaussianRational(-1)
                         else "(%r)*%s" % (c, v))
        return " + ".join(parts) if parts else "0"


class FaceEntry:
    """One stop on a face boundary: an edge or a crossing label."""

    __slots__ = ("kind", "expr", "direction")

    def __init__(self, kind, expr, direction=None):
        if kind not in ("edge", "crossing"):
            raise DiagramError("entry kind must be 'edge' or 'crossing'")
        if kind == "edge":
            if direction not in ("with", "against"):
                raise DiagramError("edge entries need direction 'with' or 'against'")
        elif direction is not None:
            raise DiagramError("crossing entries carry no direction")
        self.kind = kind
        self.expr = expr
        self.direction = direction

    @property
    def sign(self):
        """Travel sign of an edge: +1 with the edge, -1 against it."""
        return 1 if self.direction == "with" else -1

    def __eq__(self, other):
        return (isinstance(other, FaceEntry) and self.kind == other.kind
                and self.expr == other.expr and self.direction == other.direction)

    def __repr__(self):
        d = "" if self.direction is None else " " + self.direction
        return "<%s %r%s>" % (self.kind, self.expr, d)


class Face:
    """A region boundary: cyclic, strictly alternating edge/crossing."""

    __slots__ = ("id", "entries")

    def __init__(self, face_id, entries):
        self.id = face_id
        self.entries = list(entries)

    @property
    def sides(self):
        return sum(1 for e in self.entries if e.kind == "crossing")

    def alternates(self):
        n = len(self.entries)
        if n == 0 or n % 2:
            return False
        return all(self.entries[i].kind != self.entries[(i + 1) % n].kind
                   for i in range(n))

    def variables(self):
        seen = set()
        for e in self.entries:
            seen |= e.expr.variables()
        return seen

    def __eq__(self, other):
        return (isinstance(other, Face) and self.id == other.id
                and self.entries == other.entries)

    def __repr__(self):
        return "Face(%r, %d sides)" % (self.id, self.sides)


class CrossingCircle:
    """A crossing-circle component and where its labels live."""

    __slots__ = ("id", "omega_var", "half_twist", "strands", "slots")

    def __init__(self, circle_id, omega_var, half_twist, strands, slots):
        if half_twist not in ("none", "right", "left"):
            raise DiagramError("half_twist must be none, right or left")
        if strands not in ("parallel", "antiparallel"):
            raise DiagramError("strands must be parallel or antiparallel")
        self.id = circle_id
        self.omega_var = omega_var
        self.half_twist = half_twist
        self.strands = strands
        self.slots = slots

    def side_sign(self):
        return int(self.slots.get("side_sign", 1))

    def __eq__(self, other):
        return (isinstance(other, CrossingCircle) and self.id == other.id
                and self.omega_var == other.omega_var
                and self.half_twist == other.half_twist
                and self.strands == other.strands and self.slots == other.slots)

    def __repr__(self):
        return "CrossingCircle(%r, omega=%s, %s, %s)" % (
            self.id, self.omega_var, self.half_twist, self.strands)


class ProjectionComponent:
    """A projection-plane strand: signed edge variables along it."""

    __slots__ = ("id", "edge_terms", "half_twist_passes", "half_twist_sign")

    def __init__(self, comp_id, edge_terms, half_twist_passes=0,
                 half_twist_sign=1):
        if half_twist_passes < 0:
            raise DiagramError("half_twist_passes must be nonnegative")
        if half_twist_sign not in (1, -1):
            raise DiagramError("half_twist_sign must be +1 or -1")
        self.id = comp_id
        self.edge_terms = [(v, int(s)) for v, s in edge_terms]
        for _, s in self.edge_terms:
            if s not in (1, -1):
                raise DiagramError("component edge signs must be +1 or -1")
        self.half_twist_passes = half_twist_passes
        self.half_twist_sign = half_twist_sign

    def __eq__(self, other):
        return (isinstance(other, ProjectionComponent) and self.id == other.id
                and self.edge_terms == other.edge_terms
                and self.half_twist_passes == other.half_twist_passes
                and self.half_twist_sign == other.half_twist_sign)

    def __repr__(self):
        return "ProjectionComponent(%r, %d edges)" % (self.id, len(self.edge_terms))


class FALDiagram:
    """The whole labeled diagram."""

    __slots__ = ("generic", "variables", "faces", "circles", "components")

    def __init__(self, generic, variables, faces, circles, components):
        self.generic = bool(generic)
        # merge duplicate declarations, keep first-appearance order
        seen, ordered = set(), []
        for v in variables:
            if v not in seen:
                seen.add(v)
                ordered.append(v)
        self.variables = tuple(ordered)
        self.faces = list(faces)
        self.circles = list(circles)
        self.components = list(components)

    def face_by_id(self, face_id) -> Face:
        for f in self.faces:
            if f.id == face_id:
                return f
        raise KeyError("no face %r" % face_id)

    def __eq__(self, other):
        return (isinstance(other, FALDiagram) and self.generic == other.generic
                and self.variables == other.variables
                and self.faces == other.faces and self.circles == other.circles
                and self.components == other.components)

    def __repr__(self):
        return "FALDiagram(%d faces, %d circles, %d components%s)" % (
            len(self.faces), len(self.circles), len(self.components),
            ", generic" if self.generic else "")


def parse_diagram(text: str) -> FALDiagram:
    """Parse and validate a diagram from its JSON form."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DiagramError("not valid JSON: %s" % e)
    if not isinstance(obj, dict):
        raise DiagramError("top level must be an object")
    known = {"generic", "variables", "faces", "circles", "components"}
    extra = set(obj) - known
    if extra:
        raise DiagramError("unknown top-level keys: %s" % sorted(extra))

    faces = []
    for fobj in obj.get("faces", []):
        entries = []
        for eobj in fobj.get("entries", []):
            kind = eobj.get("kind")
            expr = LabelExpr.from_json(eobj.get("expr", {}))
            entries.append(FaceEntry(kind, expr, eobj.get("direction")))
        if "id" not in fobj:
            raise DiagramError("face without id")
        faces.append(Face(fobj["id"], entries))

    circles = []
    for cobj in obj.get("circles", []):
        try:
            circles.append(CrossingCircle(cobj["id"], cobj["omega"],
                                          cobj.get("half_twist", "none"),
                                          cobj["strands"],
                                          cobj.get("slots", {})))
        except KeyError as e:
            raise DiagramError("circle record missing %s" % e)

    components = []
    for pobj in obj.get("components", []):
        try:
            components.append(ProjectionComponent(
                pobj["id"], [tuple(t) for t in pobj["edges"]],
                pobj.get("half_twist_passes", 0),
                pobj.get("half_twist_sign", 1)))
        except KeyError as e:
            raise DiagramError("component record missing %s" % e)

    d = FALDiagram(obj.get("generic", False), obj.get("variables", []),
                   faces, circles, components)
    findings = validate(d)
    if findings:
        raise DiagramError("; ".join(repr(f) for f in findings))
    return d


def serialize_diagram(d: FALDiagram) -> str:
    """Canonical JSON form; parse(serialize(d)) == d."""
    obj = {
        "generic": d.generic,
        "variables": list(d.variables),
        "faces": [{
            "id": f.id,
            "entries": [_entry_json(e) for e in f.entries],
        } for f in d.faces],
        "circles": [{
            "id": c.id,
            "omega": c.omega_var,
            "half_twist": c.half_twist,
            "strands": c.strands,
            "slots": c.slots,
        } for c in d.circles],
        "components": [_component_json(p) for p in d.components],
    }
    return json.dumps(obj, indent=2) + "\n"


def _entry_json(e: FaceEntry):
    out = {"kind": e.kind, "expr": e.expr.to_json()}
    if e.direction is not None:
        out["direction"] = e.direction
    return out


def _component_json(p: ProjectionComponent):
    out = {"id": p.id, "edges": [[v, s] for v, s in p.edge_terms],
           "half_twist_passes": p.half_twist_passes}
    if p.half_twist_sign != 1:
        out["half_twist_sign"] = p.half_twist_sign
    return out


def validate(d: FALDiagram) -> list:
    """Structural checks; returns findings instead of raising."""
    findings = []
    if not d.faces:
        findings.append(Finding("EmptyDiagram", "diagram", "no faces"))
    declared = set(d.variables)
    face_ids = set()
    for f in d.faces:
        if f.id in face_ids:
            findings.append(Finding("DuplicateFaceId", f.id))
        face_ids.add(f.id)
        if f.entries and not f.alternates():
            findings.append(Finding("NonAlternatingFace", f.id))
        elif f.entries and f.sides < 2:
            findings.append(Finding("FaceTooSmall", f.id,
                                    "%d crossing entries" % f.sides))
        if not f.entries:
            findings.append(Finding("NonAlternatingFace", f.id, "empty"))
        for v in sorted(f.variables() - declared):
            findings.append(Finding("DanglingVariable", f.id, v))

    omega_vars = set()
    for c in d.circles:
        if c.omega_var in omega_vars:
            findings.append(Finding("SharedOmegaVariable", c.id, c.omega_var))
        omega_vars.add(c.omega_var)
        if c.omega_var not in declared:
            findings.append(Finding("DanglingVariable", c.id, c.omega_var))
        for key in ("pair_a", "pair_b", "sphere", "meridians", "half_edges"):
            for ref in c.slots.get(key, []):
                problem = _check_ref(d, ref, face_ids)
                if problem:
                    findings.append(Finding("BadSlotReference", c.id,
                                            "%s %s" % (key, problem)))

    if not d.generic:
        for f in d.faces:
            for e in f.entries:
                if e.kind != "crossing":
                    continue
                for v in sorted(e.expr.variables() - omega_vars):
                    if v in declared:
                        findings.append(Finding("UnassignedCrossingVariable",
                                                f.id, v))

    for p in d.components:
        for v, _ in p.edge_terms:
            if v not in declared:
                findings.append(Finding("DanglingVariable", p.id, v))
    return findings


def _check_ref(d, ref, face_ids):
    if (not isinstance(ref, (list, tuple))) or len(ref) != 2:
        return "malformed %r" % (ref,)
    fid, idx = ref
    if fid not in face_ids:
        return "unknown face %r" % fid
    face = d.face_by_id(fid)
    if not isinstance(idx, int) or not 0 <= idx < len(face.entries):
        return "index %r out of range on %r" % (idx, fid)
    return ""


def apply_fal_labeling(d: FALDiagram) -> FALDiagram:
    """Impose the crossing-circle labeling rules on the tagged slots.

    Per circle: both bigon-pair labels become the circle's omega variable
    (the second pair negated for antiparallel strands), the disc-plane
    crossing becomes -1/4 (parallel) or +1/4 (antiparallel), meridian
    arcs become 1 and hexagon half-edges become 1/2. Idempotent.
    """
    new_exprs = {}

    def put(circle, ref, kind, expr):
        fid, idx = ref
        face = d.face_by_id(fid)
        entry = face.entries[idx]
        if entry.kind != kind:
            raise DiagramError("slot of circle %r expects a %s at %s[%d]"
                               % (circle.id, kind, fid, idx))
        key = (fid, idx)
        if key in new_exprs and new_exprs[key] != expr:
            raise DiagramError("contradictory identification at %s[%d]"
                               % (fid, idx))
        new_exprs[key] = expr

    for c in d.circles:
        for key in ("pair_a", "pair_b", "sphere"):
            if key not in c.slots:
                raise DiagramError("circle %r has untagged slot %r" % (c.id, key))
        s = c.side_sign()
        omega_a = LabelExpr.var(c.omega_var, s)
        omega_b = (omega_a if c.strands == "parallel"
                   else LabelExpr.var(c.omega_var, -s))
        sphere = LabelExpr.const(-_QUARTER if c.strands == "parallel"
                                 else _QUARTER)
        for ref in c.slots["pair_a"]:
            put(c, ref, "crossing", omega_a)
        for ref in c.slots["pair_b"]:
            put(c, ref, "crossing", omega_b)
        for ref in c.slots["sphere"]:
            put(c, ref, "crossing", sphere)
        for ref in c.slots.get("meridians", []):
            put(c, ref, "edge", LabelExpr.const(1))
        for ref in c.slots.get("half_edges", []):
            put(c, ref, "edge", LabelExpr.const(_HALF))

    faces = []
    for f in d.faces:
        entries = []
        for i, e in enumerate(f.entries):
            expr = new_exprs.get((f.id, i), e.expr)
            entries.append(FaceEntry(e.kind, expr, e.direction))
        faces.append(Face(f.id, entries))
    return FALDiagram(d.generic, d.variables, faces, d.circles, d.components)
