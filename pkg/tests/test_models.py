import pytest

from gcontact.jets import Chart, standard_framing
from gcontact.models import (E_inside_F, curved_to_jet, emit_E, emit_F,
                             emit_Q, emit_V, envelope_check, flat_jet2_chart,
                             is_symmetry_complete_2nd, is_symmetry_E,
                             is_symmetry_F, is_symmetry_Q, is_symmetry_V,
                             quartic_table, quartic_vanishes_on_cone, tparams)
from gcontact.realize import descriptor, flat_generators
from gcontact.rings import RatFunc, qq


FAST = ["G2", "B3", "D4"]


@pytest.fixture(scope="module")
def g2():
    d = descriptor("G2")
    return d, d.jordan()


def framing_with_params(desc):
    chart = Chart(desc.n, params=tparams(desc.n))
    return standard_framing(chart)


def test_emit_V_limits(g2):
    d, J = g2
    chart = Chart(2, params=("t1", "lam"))
    fr = standard_framing(chart)
    V = emit_V(J, fr, with_lambda=True)
    # lam = 1, t = 0 -> X_0;   lam = 0 -> multiple of U^0
    at0 = V.substitute({"t1": chart.zero(), "lam": chart.one()})
    assert (at0 - fr.X[0]).is_zero
    atl0 = V.substitute({"lam": chart.zero()})
    assert set(atl0.comps) <= {"u0"}
    # components match the cone pattern [1, -t, -C/2, -(3/2)C_a]
    t = chart.var("t1")
    V1 = emit_V(J, fr, with_lambda=False)
    assert V1.coeff("x0") == chart.one()
    assert V1.coeff("x1") == -t
    assert V1.coeff("u") == chart.du(0) - t * chart.du(1)
    assert V1.coeff("u0") == -t ** 3 / 6
    assert V1.coeff("u1") == -qq(3, 2) * (t ** 2 / 3)


def test_emit_E_g2(g2):
    d, J = g2
    E = emit_E(J)
    c2 = E.chart
    t = c2.var("t1")
    assert E.equations[(0, 0)] == t ** 3 / 3
    assert E.equations[(0, 1)] == t ** 2 / 2
    assert E.equations[(1, 1)] == t


@pytest.mark.parametrize("name", FAST + ["F4"])
def test_envelope_and_inclusion(name):
    J = descriptor(name).jordan()
    ok, fails = envelope_check(J)
    assert ok, fails
    assert E_inside_F(J)


@pytest.mark.parametrize("name", FAST)
def test_quartic_on_cone(name):
    J = descriptor(name).jordan()
    assert quartic_vanishes_on_cone(J)


def test_quartic_discriminant_pattern(g2):
    # in the basis (r^3, 3r^2 s, 3r s^2, s^3) the quartic is 36 times the
    # classical discriminant of the binary cubic
    d, J = g2
    from gcontact.rings import PARAMETER
    T = quartic_table(2).extend([("c%d" % i, PARAMETER) for i in range(1, 5)])
    Q = emit_Q(J).lift(T)
    c1, c2, c3, c4 = [T.var("c%d" % i) for i in range(1, 5)]
    binds = {"a0": c1, "a1": -c2, "b0": -c4 / 6, "b1": -c3 / 2}
    got = Q.substitute(binds) * 36
    disc = (c1 ** 2 * c4 ** 2 - 6 * c1 * c2 * c3 * c4 + 4 * c1 * c3 ** 3
            + 4 * c2 ** 3 * c4 - 3 * c2 ** 2 * c3 ** 2)
    assert (got - disc).is_zero


def test_symmetry_V_basics(g2):
    d, J = g2
    fr = framing_with_params(d)
    chart = fr.chart
    assert is_symmetry_V(J, fr, chart.one())
    assert is_symmetry_V(J, fr, chart.du(1))
    bad = chart.x(0) * chart.x(1)
    ok, res = is_symmetry_V(J, fr, bad, return_residuals=True)
    assert not ok and res


@pytest.mark.parametrize("name", FAST)
def test_four_way_agreement(name):
    d = descriptor(name)
    J = d.jordan()
    real = flat_generators(d)
    fr = framing_with_params(d)
    for f, lab in zip(real.basis, real.labels):
        assert is_symmetry_V(J, fr, f), lab
        assert is_symmetry_Q(J, fr, f), lab
        assert is_symmetry_E(J, f), lab
        assert is_symmetry_F(J, f), lab


def test_non_symmetries(g2):
    d, J = g2
    fr = framing_with_params(d)
    chart = fr.chart
    u2 = chart.u() * chart.u()
    assert not is_symmetry_V(J, fr, u2)
    assert not is_symmetry_Q(J, fr, u2)
    assert not is_symmetry_E(J, u2)
    assert not is_symmetry_F(J, u2)
    assert is_symmetry_E(J, chart.du(1))
    assert is_symmetry_F(J, chart.du(1))


def test_bracket_of_symmetries_is_symmetry(g2):
    from gcontact.jets import lagrange
    d, J = g2
    real = flat_generators(d)
    fr = framing_with_params(d)
    chart = fr.chart
    import random
    rng = random.Random(4)
    for _ in range(6):
        i, j = rng.sample(range(real.dim), 2)
        br = lagrange(real.chart, real.basis[i], real.basis[j])
        assert is_symmetry_V(J, fr, br)


def test_curved_to_jet_translation_row(g2):
    # a framing whose X_0 picks up y d/dp shifts u_xx by y
    d, J = g2
    chart = Chart(2, base_names=["x", "y"], jet1_names=["p", "q"])
    from gcontact.jets import VectorField, CSFraming
    X0 = VectorField(chart, {"x": chart.one(), "u": chart.var("p"),
                             "p": chart.var("y")})
    X1 = VectorField(chart, {"y": chart.one(), "u": chart.var("q")})
    U0 = VectorField(chart, {"p": chart.one()})
    U1 = VectorField(chart, {"q": chart.one()})
    fr = CSFraming(chart, [X0, X1], [U0, U1])
    sys = curved_to_jet(J, fr)
    c2 = sys.chart
    t = c2.var("t1")
    assert sys.equations[(0, 0)] == RatFunc.wrap(t ** 3 / 3 + c2.var("y"))
    assert sys.equations[(0, 1)] == RatFunc.wrap(t ** 2 / 2)
    assert sys.equations[(1, 1)] == RatFunc.wrap(t)


def test_complete_second_order_symmetry():
    chart2 = Chart(2, order=2)
    rhs = {key: chart2.zero() for key in chart2.jet2}
    # translations and scalings preserve u_ij = 0
    assert is_symmetry_complete_2nd(chart2, rhs, chart2.one())
    z = 2 * chart2.u() - chart2.x(0) * chart2.du(0) - chart2.x(1) * chart2.du(1)
    assert is_symmetry_complete_2nd(chart2, rhs, z, require_point=True)
    # u_0^2 generates a contact but non-point transformation
    f = chart2.du(0) * chart2.du(0)
    assert is_symmetry_complete_2nd(chart2, rhs, f)
    assert not is_symmetry_complete_2nd(chart2, rhs, f, require_point=True)
    # u^2 is not a symmetry of u_ij = 0
    assert not is_symmetry_complete_2nd(chart2, rhs, chart2.u() ** 2)


def _direct_F_check(J, f):
    # straightforward second-order computation, as a cross-check of the
    # contracted first-jet engine
    from gcontact.jets import prolong
    from gcontact.models import emit_F, goursat_family
    chart2 = flat_jet2_chart(J.n)
    S2 = prolong(chart2, chart2.import_poly(f), verify=False)
    G = goursat_family(J, chart2)
    return S2.apply(G).substitute(emit_F(J, chart2=chart2).substitution())


def _direct_E_check(J, f):
    from gcontact.jets import prolong
    from gcontact.models import goursat_family
    from gcontact.models import flat_E_values
    chart2 = flat_jet2_chart(J.n)
    S2 = prolong(chart2, chart2.import_poly(f), verify=False)
    G = goursat_family(J, chart2)
    subs = {chart2.jet2[k]: v for k, v in flat_E_values(J, chart2).items()}
    conds = [G] + [G.derive("t%d" % a) for a in range(1, J.n)]
    return all(S2.apply(c).substitute(subs).is_zero for c in conds)


@pytest.mark.parametrize("name", ["G2", "B3"])
def test_engine_agrees_with_direct_prolongation(name):
    import random
    d = descriptor(name)
    J = d.jordan()
    real = flat_generators(d)
    chart = real.chart
    rng = random.Random(9)
    gens = [chart.x(0), chart.u(), chart.u() * chart.du(0),
            chart.x(1) * chart.x(1)]
    gens += [real.basis[i] for i in rng.sample(range(real.dim), 5)]
    for f in gens:
        fast = is_symmetry_F(J, f)
        direct = _direct_F_check(J, f).is_zero
        assert fast == direct
        # the gradient/base part of the tangent-lift conditions
        fastE = is_symmetry_E(J, f)
        if fastE:
            assert _direct_E_check(J, f)


def test_pde_json(g2):
    d, J = g2
    E = emit_E(J)
    data = E.to_json_dict()
    assert data["type"] == "parametric-E"
    assert data["n"] == 2
    assert len(data["equations"]) == 3
