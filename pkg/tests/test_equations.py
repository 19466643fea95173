"""Shape parameters, cleared face equations and region matrix products."""

import math
from fractions import Fraction

import pytest

from ttfal import (DegenerateFace, Face, FaceEntry, FALDiagram, LabelExpr,
                   Mat2, MultiPoly, assemble_system, face_equations,
                   region_matrix, shape_params)


def _c(expr):
    return FaceEntry("crossing", expr)


def _e(expr, direction="with"):
    return FaceEntry("edge", expr, direction)


def _lv(name, coeff=1):
    return LabelExpr.var(name, coeff)


def _lc(c):
    return LabelExpr.const(c)


def _v(name):
    return MultiPoly.var(name)


_QUARTER = Fraction(1, 4)
_HALF = Fraction(1, 2)


# Three-sided region between two strand pairs: disc-plane crossing 1/4,
# then the two circle labels, edges u1, 1, u2 all traveled the same way.
def _three_sided():
    return Face("aleph", [
        _c(_lc(_QUARTER)),
        _e(_lv("u1")),
        _c(_lv("w2")),
        _e(_lc(1)),
        _c(_lv("w2")),
        _e(_lv("u2")),
    ])


def test_shape_params_three_sided():
    params = shape_params(_three_sided())
    assert [p.sign for p in params] == [-1, -1, -1]
    assert params[0].denominator[0] == _lv("u2")
    assert params[0].denominator[1] == _lv("u1")
    assert params[1].numerator == _lv("w2")
    # at u = -i/2, w = i/2 every parameter is 1
    vals = {"u1": -0.5j, "u2": -0.5j, "w2": 0.5j}
    for p in params:
        assert abs(p.eval_complex(vals) - 1) < 1e-12


def test_shape_param_sign_rule():
    f = _three_sided()
    f.entries[1] = _e(_lv("u1"), "against")
    signs = [p.sign for p in shape_params(f)]
    # flanked by travel directions that differ -> positive
    assert signs == [1, 1, -1]


def test_three_sided_equations():
    eqs, side = face_equations(_three_sided())
    assert eqs[0] == MultiPoly.const(Fraction(-1, 4)) - _v("u2") * _v("u1")
    assert eqs[1] == -_v("w2") - _v("u1")
    assert eqs[2] == -_v("w2") - _v("u2")
    assert side == [_v("u2"), _v("u1")]


def test_three_sided_affine_edges():
    # edge labels like -1+u come from the alternating-link convention
    f = Face("daleth", [
        _e(LabelExpr(-1, {"u2": 1})),
        _c(_lv("w1")),
        _e(LabelExpr(-1, {"u4": 1})),
        _c(_lv("w2")),
        _e(LabelExpr(-1, {"u6": 1})),
        _c(_lv("w3")),
    ])
    eqs, _ = face_equations(f)
    d2, d4 = MultiPoly.const(-1) + _v("u2"), MultiPoly.const(-1) + _v("u4")
    assert eqs[0] == -_v("w1") - d2 * d4
    vals = {"w1": 0.375 + math.sqrt(7) / 8 * 1j, "w2": 0.0, "w3": 0.0,
            "u2": 0.75 + math.sqrt(7) / 4 * 1j,
            "u4": 0.75 + math.sqrt(7) / 4 * 1j, "u6": 0.0}
    assert abs(eqs[0].eval_complex(vals)) < 1e-12


def _four_sided():
    # crossing pair w1 against crossing pair w3, separated by meridians
    return Face("f4", [
        _e(_lv("u1"), "with"),
        _c(_lv("w1")),
        _e(_lc(1), "against"),
        _c(_lv("w1")),
        _e(_lv("u2"), "with"),
        _c(_lv("w3")),
        _e(_lc(1), "against"),
        _c(_lv("w3")),
    ])


def test_four_sided_equations():
    f = _four_sided()
    assert [p.sign for p in shape_params(f)] == [1, 1, 1, 1]
    eqs, side = face_equations(f)
    assert len(eqs) == 4
    assert eqs[0] == _v("w1") * _v("u2") + _v("w1") * _v("u1") - _v("u1") * _v("u2")
    assert side == [_v("u1"), _v("u2")]
    # the relations u1 = u2 = 2w1 = 2w3 kill the whole face
    two_w = MultiPoly.var("w1", 2)
    for eq in eqs:
        dead = eq.substitute("u1", two_w).substitute("u2", two_w)
        dead = dead.substitute("w3", _v("w1"))
        assert dead.is_zero


def test_four_sided_cyclic_pairs():
    # opposite shape parameters around a four-sided region agree
    f = Face("f4c", [
        _e(_lc(1), "with"),
        _c(_lv("w1", -1)),
        _e(_lv("u2"), "against"),
        _c(_lv("w2", -1)),
        _e(_lc(1), "with"),
        _c(_lv("w2", -1)),
        _e(_lv("u1"), "against"),
        _c(_lv("w1", -1)),
    ])
    params = shape_params(f)
    assert [p.sign for p in params] == [1, 1, 1, 1]
    r = math.sqrt(2) / 4
    vals = {"w1": r * 1j, "w2": r * 1j, "u1": -2 * r * 1j, "u2": -2 * r * 1j}
    xi = [p.eval_complex(vals) for p in params]
    assert abs(xi[0] - xi[2]) < 1e-12 and abs(xi[1] - xi[3]) < 1e-12
    assert all(abs(x - 0.5) < 1e-12 for x in xi)
    for eq in face_equations(f)[0]:
        assert abs(eq.eval_complex(vals)) < 1e-12


def test_region_matrix_scalar_hexagon():
    # hexagon with its constraints already substituted in
    f = Face("hex", [
        _c(_lv("w1")),
        _e(_lc(_HALF), "with"),
        _c(_lc(_QUARTER)),
        _e(_lc(_HALF), "against"),
        _c(_lv("w1", -1)),
        _e(_lv("w1", 2), "against"),
    ])
    half_w = MultiPoly.var("w1", Fraction(-1, 2))
    zero = MultiPoly.const(0)
    expected = Mat2(half_w, zero, zero, half_w)
    for start in range(6):
        assert region_matrix(f, start) == expected


def _chain_face(n, z_var="z"):
    # crossing chain -1/4, +1/4 x(n-2), -1/4 with x edges and a back edge z
    entries = [_c(_lc(-_QUARTER)), _e(_lv("x"), "with")]
    for _ in range(n - 2):
        entries.append(_c(_lc(_QUARTER)))
        entries.append(_e(_lv("x"), "with"))
    entries.append(_c(_lc(-_QUARTER)))
    entries.append(_e(_lv(z_var), "against"))
    return Face("chain%d" % n, entries)


def test_region_matrix_three_crossing_chain():
    m = region_matrix(_chain_face(3))
    x, z = _v("x"), _v("z")
    q = MultiPoly.const(_QUARTER)
    assert m.e11 == -q * x
    assert m.e12 == q * q + q * x * z
    assert m.e21 == x * x + q
    assert m.e22 == -(x * x * z) - q * x - q * z


def test_five_sided_face_uses_matrix_entries():
    f = _chain_face(5)
    eqs, side = face_equations(f)
    assert len(eqs) == 3
    x = _v("x")
    c5 = x ** 4 + x ** 2 * Fraction(3, 4) + MultiPoly.const(Fraction(1, 16))
    assert eqs[1] == c5
    assert "z" not in eqs[1].variables_present()
    assert side == [_v("z"), _v("x")]


def test_bigon_refused():
    f = Face("bigon", [_c(_lv("w1")), _e(_lv("a")),
                       _c(_lv("w1")), _e(_lv("a"), "against")])
    with pytest.raises(DegenerateFace):
        face_equations(f)


def test_non_alternating_raises():
    f = Face("bad", [_e(_lv("a")), _e(_lv("b")),
                     _c(_lv("w")), _c(_lv("w"))])
    with pytest.raises(ValueError, match="alternate"):
        shape_params(f)


def test_assemble_counts():
    faces = [
        _three_sided(),
        Face("beth", [
            _c(_lc(_QUARTER)),
            _e(_lv("u3")),
            _c(_lv("w2")),
            _e(_lc(1)),
            _c(_lv("w2")),
            _e(_lv("u4")),
        ]),
        Face("gimel", [
            _c(_lc(_QUARTER)),
            _e(_lv("u2")),
            _c(_lv("w1")),
            _e(_lc(1)),
            _c(_lv("w1")),
            _e(_lv("u3")),
        ]),
    ]
    d = FALDiagram(True, ["w1", "w2", "u1", "u2", "u3", "u4"], faces, [], [])
    system = assemble_system(d)
    assert len(system.equations) == 9
    assert len(system.side_conditions) == 4
    for name in ("u1", "u2", "u3", "u4"):
        assert _v(name) in system.side_conditions
    assert system.variables == ("w1", "w2", "u1", "u2", "u3", "u4")
