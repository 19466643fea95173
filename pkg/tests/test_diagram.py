"""Diagram parsing, validation and the crossing-circle labeling rules."""

import copy
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ttfal import (DiagramError, FALDiagram, Face, FaceEntry,
                   GaussianRational, LabelExpr, apply_fal_labeling,
                   parse_diagram, serialize_diagram, validate)
from ttfal.diagram import Finding


def _quad(a, b=1, c=0, d=1):
    return [a, b, c, d]


def _edge(terms=None, const=_quad(0), direction="with"):
    expr = {"const": const}
    if terms:
        expr["terms"] = terms
    return {"kind": "edge", "expr": expr, "direction": direction}


def _crossing(terms=None, const=_quad(0)):
    expr = {"const": const}
    if terms:
        expr["terms"] = terms
    return {"kind": "crossing", "expr": expr}


# One hexagonal face of a single crossing circle: the boundary runs
# pair crossing, long edge, other pair crossing, half edge, disc-plane
# crossing, half edge. Label slots still unset.
_HEX_RAW = {
    "generic": False,
    "variables": ["w1", "u1"],
    "faces": [{
        "id": "hex",
        "entries": [
            _crossing(),
            _edge({"u1": _quad(1)}, direction="against"),
            _crossing(),
            _edge(direction="with"),
            _crossing(),
            _edge(direction="against"),
        ],
    }],
    "circles": [{
        "id": "q",
        "omega": "w1",
        "half_twist": "none",
        "strands": "antiparallel",
        "slots": {
            "pair_a": [["hex", 0]],
            "pair_b": [["hex", 2]],
            "sphere": [["hex", 4]],
            "meridians": [],
            "half_edges": [["hex", 3], ["hex", 5]],
        },
    }],
    "components": [{"id": "k", "edges": [["u1", 1]], "half_twist_passes": 0}],
}


def _parse_raw(obj):
    return parse_diagram(json.dumps(obj))


_rationals = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@st.composite
def _label_exprs(draw):
    const = GaussianRational(draw(_rationals), draw(_rationals))
    terms = {}
    for name in draw(st.sets(st.sampled_from(["a", "b", "c"]))):
        terms[name] = GaussianRational(draw(_rationals), draw(_rationals))
    return LabelExpr(const, terms)


@given(_label_exprs())
def test_label_expr_json_roundtrip(expr):
    assert LabelExpr.from_json(expr.to_json()) == expr


def test_label_expr_rejects_floats():
    with pytest.raises(DiagramError):
        LabelExpr.from_json({"const": [0.5, 1, 0, 1]})
    with pytest.raises(DiagramError):
        LabelExpr.from_json({"terms": {"u1": _quad(1)}})


def test_parse_rejects_bad_json():
    with pytest.raises(DiagramError):
        parse_diagram("{not json")


def test_parse_rejects_unknown_keys():
    raw = dict(_HEX_RAW, crossings=[])
    with pytest.raises(DiagramError):
        _parse_raw(raw)


def test_parse_rejects_face_without_id():
    raw = copy.deepcopy(_HEX_RAW)
    del raw["faces"][0]["id"]
    with pytest.raises(DiagramError):
        _parse_raw(raw)


def test_parse_rejects_dangling_variable():
    raw = copy.deepcopy(_HEX_RAW)
    raw["components"][0]["edges"] = [["u9", 1]]
    with pytest.raises(DiagramError, match="DanglingVariable"):
        _parse_raw(raw)


def test_parse_serialize_roundtrip():
    d = _parse_raw(_HEX_RAW)
    again = parse_diagram(serialize_diagram(d))
    assert again == d
    assert serialize_diagram(again) == serialize_diagram(d)


def test_labeling_antiparallel_circle():
    labeled = apply_fal_labeling(_parse_raw(_HEX_RAW))
    entries = labeled.face_by_id("hex").entries
    assert entries[0].expr == LabelExpr.var("w1")
    assert entries[2].expr == LabelExpr.var("w1", -1)
    assert entries[4].expr == LabelExpr.const(Fraction(1, 4))
    assert entries[3].expr == LabelExpr.const(Fraction(1, 2))
    assert entries[5].expr == LabelExpr.const(Fraction(1, 2))
    # untouched: the long edge and every direction
    assert entries[1].expr == LabelExpr.var("u1")
    assert [e.direction for e in entries] == [None, "against", None, "with",
                                              None, "against"]


def test_labeling_parallel_circle():
    raw = copy.deepcopy(_HEX_RAW)
    raw["circles"][0]["strands"] = "parallel"
    labeled = apply_fal_labeling(_parse_raw(raw))
    entries = labeled.face_by_id("hex").entries
    assert entries[0].expr == LabelExpr.var("w1")
    assert entries[2].expr == LabelExpr.var("w1")
    assert entries[4].expr == LabelExpr.const(Fraction(-1, 4))


def test_labeling_side_sign_flip():
    raw = copy.deepcopy(_HEX_RAW)
    raw["circles"][0]["slots"]["side_sign"] = -1
    labeled = apply_fal_labeling(_parse_raw(raw))
    entries = labeled.face_by_id("hex").entries
    assert entries[0].expr == LabelExpr.var("w1", -1)
    assert entries[2].expr == LabelExpr.var("w1")
    assert entries[4].expr == LabelExpr.const(Fraction(1, 4))


def test_labeling_idempotent():
    once = apply_fal_labeling(_parse_raw(_HEX_RAW))
    assert apply_fal_labeling(once) == once


def test_labeling_missing_slot_tag():
    raw = copy.deepcopy(_HEX_RAW)
    del raw["circles"][0]["slots"]["sphere"]
    with pytest.raises(DiagramError, match="untagged slot"):
        apply_fal_labeling(_parse_raw(raw))


def test_labeling_kind_mismatch():
    raw = copy.deepcopy(_HEX_RAW)
    raw["circles"][0]["slots"]["sphere"] = [["hex", 1]]
    with pytest.raises(DiagramError, match="expects a crossing"):
        apply_fal_labeling(_parse_raw(raw))


def test_labeling_contradiction():
    raw = copy.deepcopy(_HEX_RAW)
    raw["variables"].append("w2")
    second = copy.deepcopy(raw["circles"][0])
    second["id"] = "r"
    second["omega"] = "w2"
    second["slots"] = {"pair_a": [["hex", 0]], "pair_b": [], "sphere": []}
    raw["circles"].append(second)
    with pytest.raises(DiagramError, match="contradictory identification"):
        apply_fal_labeling(_parse_raw(raw))


def test_labeling_contribution_bookkeeping():
    # one circle brings exactly: a +/- omega pair, one quarter crossing
    # and two half edges; meridian slots always read 1
    labeled = apply_fal_labeling(_parse_raw(_HEX_RAW))
    circle = labeled.circles[0]
    face = labeled.face_by_id("hex")
    omegas = [face.entries[i].expr
              for _, i in circle.slots["pair_a"] + circle.slots["pair_b"]]
    assert sorted(str(e) for e in omegas) == ["-w1", "w1"]
    quarters = [face.entries[i].expr for _, i in circle.slots["sphere"]]
    assert all(e.is_constant and abs(e.constant.re) == Fraction(1, 4)
               for e in quarters)
    halves = [face.entries[i].expr for _, i in circle.slots["half_edges"]]
    assert [e.constant.re for e in halves] == [Fraction(1, 2), Fraction(1, 2)]
    for _, i in circle.slots.get("meridians", []):
        assert face.entries[i].expr == LabelExpr.const(1)


def _entry(kind, expr, direction=None):
    return FaceEntry(kind, expr, direction)


def test_validate_non_alternating():
    f = Face("f", [_entry("edge", LabelExpr.const(1), "with"),
                   _entry("edge", LabelExpr.const(1), "with")])
    d = FALDiagram(False, [], [f], [], [])
    assert Finding("NonAlternatingFace", "f") in validate(d)


def test_validate_empty_diagram():
    d = FALDiagram(False, [], [], [], [])
    assert Finding("EmptyDiagram", "diagram") in validate(d)


def test_validate_duplicate_face_id():
    f = Face("f", [_entry("edge", LabelExpr.const(1), "with"),
                   _entry("crossing", LabelExpr.const(1))])
    d = FALDiagram(False, [], [f, f], [], [])
    assert Finding("DuplicateFaceId", "f") in validate(d)


def test_validate_bad_slot_references():
    d = _parse_raw(_HEX_RAW)
    circle = d.circles[0]
    circle.slots["pair_a"] = [["nope", 0]]
    circle.slots["pair_b"] = [["hex", 99]]
    circle.slots["sphere"] = [["hex"]]
    found = [f for f in validate(d) if f.code == "BadSlotReference"]
    assert len(found) == 3


def test_validate_shared_omega_variable():
    raw = copy.deepcopy(_HEX_RAW)
    second = copy.deepcopy(raw["circles"][0])
    second["id"] = "r"
    raw["circles"].append(second)
    with pytest.raises(DiagramError, match="SharedOmegaVariable"):
        _parse_raw(raw)


def test_validate_unassigned_crossing_variable():
    f = Face("f", [_entry("edge", LabelExpr.var("t"), "with"),
                   _entry("crossing", LabelExpr.var("t"))])
    d = FALDiagram(False, ["t"], [f], [], [])
    assert Finding("UnassignedCrossingVariable", "f") in validate(d)
    assert Finding("UnassignedCrossingVariable", "f") not in validate(
        FALDiagram(True, ["t"], [f], [], []))
