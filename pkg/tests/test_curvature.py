import pytest

from gcontact.curvature import (g2_kappa, root_type, typeA_invariants,
                                typeC_torsions)
from gcontact.jets import Chart, CSFraming, VectorField, standard_framing
from gcontact.realize import descriptor
from gcontact.rings import parse_expr


def plane_chart():
    return Chart(2, base_names=["x", "y"], jet1_names=["p", "q"])


def framing_from(chart, spec):
    def field(d):
        comps = {}
        for nm, expr in d.items():
            comps[nm] = parse_expr(expr, chart.table).as_poly()
        return VectorField(chart, comps)
    return CSFraming(chart, [field(spec["X0"]), field(spec["X1"])],
                     [field(spec["U0"]), field(spec["U1"])])


def test_flat_kappa_vanishes():
    J = descriptor("G2").jordan()
    fr = standard_framing(plane_chart())
    k = g2_kappa(J, fr)
    assert k.is_zero
    with pytest.raises(ValueError):
        root_type(k)


def test_root_type_seven():
    J = descriptor("G2").jordan()
    chart = plane_chart()
    spec = {"X0": {"x": "1", "u": "p", "p": "y"},
            "X1": {"y": "1", "u": "q"},
            "U0": {"p": "1"}, "U1": {"q": "1"}}
    k = g2_kappa(J, framing_from(chart, spec))
    assert not k.is_zero
    assert root_type(k) == [7]


def test_root_type_six_one():
    J = descriptor("G2").jordan()
    chart = plane_chart()
    spec = {"X0": {"x": "1", "u": "p", "p": "q"},
            "X1": {"y": "1", "u": "q"},
            "U0": {"p": "1"}, "U1": {"q": "1"}}
    k = g2_kappa(J, framing_from(chart, spec))
    assert root_type(k) == [6, 1]


def test_root_type_all_distinct():
    J = descriptor("G2").jordan()
    chart = plane_chart()
    spec = {"X0": {"x": "1", "u": "p"},
            "X1": {"y": "1", "u": "q", "q": "u"},
            "U0": {"p": "1"},
            "U1": {"q": "1+u*p", "y": "p", "u": "p*q"}}
    k = g2_kappa(J, framing_from(chart, spec))
    assert root_type(k) == [1, 1, 1, 1, 1, 1, 1]


def test_kappa_requires_cs_framing():
    J = descriptor("G2").jordan()
    chart = plane_chart()
    fr = standard_framing(chart)
    bad = CSFraming(chart, fr.X, [fr.U[0], fr.U[0]])
    with pytest.raises(ValueError):
        g2_kappa(J, bad)


def test_typeA_invariants_flags():
    c = Chart(2, order=2)
    flat = typeA_invariants(2, {})
    assert not flat["tau_E"] and not flat["W"]
    xs = typeA_invariants(2, {(0, 0): c.x(1)})
    assert xs["tau_E"] and not xs["W"]
    un2 = typeA_invariants(2, {(0, 0): c.du(1) * c.du(1)})
    assert not un2["tau_E"] and un2["W"]
    # same flags at n = 3
    c3 = Chart(3, order=2)
    xs3 = typeA_invariants(3, {(0, 0): c3.x(2)})
    assert xs3["tau_E"] and not xs3["W"]
    un3 = typeA_invariants(3, {(0, 0): c3.du(2) * c3.du(2)})
    assert not un3["tau_E"] and un3["W"]


def test_typeC_invariants_flags():
    out = typeC_torsions(2, {})
    assert out["tau_E_zero"] and out["tau_EV_zero"]
    c = Chart(2, order=2)
    f1 = typeC_torsions(2, {(0, 0, 0): c.x(1)})
    assert not f1["tau_E_zero"] and f1["tau_EV_zero"]
    f2 = typeC_torsions(2, {(1, 1, 1): c.d2u(0, 0)})
    assert f2["tau_E_zero"] and not f2["tau_EV_zero"]
    c3 = Chart(3, order=2)
    g1 = typeC_torsions(3, {(0, 0, 0): c3.x(1)})
    assert not g1["tau_E_zero"] and g1["tau_EV_zero"]
    g2_ = typeC_torsions(3, {(2, 2, 2): c3.d2u(0, 0)})
    assert g2_["tau_E_zero"] and not g2_["tau_EV_zero"]


def test_typeC_rejects_unsorted():
    with pytest.raises(ValueError):
        typeC_torsions(2, {(1, 0, 0): Chart(2, order=2).x(0)})
