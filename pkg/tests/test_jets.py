import random

from gcontact.jets import (Chart, CSFraming, VectorField, check_cs_framing,
                           contact_form, expand_in_framing, lagrange, lift,
                           mobius, prolong, standard_framing)
from gcontact.rings import RatFunc, qq


def chart2():
    return Chart(2)


def test_lift_constant_is_vertical():
    c = chart2()
    S = lift(c, c.one())
    assert S.comps == {"u": c.one()}


def test_lift_ui_is_minus_base_translation():
    c = chart2()
    S = lift(c, c.du(1))
    assert set(S.comps) == {"x1"}
    assert S.comps["x1"] == -c.one()


def test_lift_scaling_element():
    c = chart2()
    z = 2 * c.u() - c.x(0) * c.du(0) - c.x(1) * c.du(1)
    S = lift(c, z)
    assert S.comps["x0"] == c.x(0)
    assert S.comps["x1"] == c.x(1)
    assert S.comps["u"] == 2 * c.u()
    assert S.comps["u0"] == c.du(0)
    assert S.comps["u1"] == c.du(1)


def test_contact_condition():
    c = chart2()
    rng = random.Random(5)
    sigma = contact_form(c)
    gens = [c.x(0), c.x(1), c.u(), c.du(0), c.du(1)]
    for _ in range(6):
        f = c.zero()
        for _ in range(5):
            t = c.const(rng.randint(-2, 2))
            for _ in range(rng.randint(0, 3)):
                t = t * rng.choice(gens)
            f = f + t
        S = lift(c, f)
        ld = sigma.lie_derivative(S)
        # L_S sigma = f_u sigma exactly
        diff = ld - sigma.scale(f.derive("u"))
        assert not diff.comps


def test_lagrange_duality():
    c = chart2()
    for i in range(2):
        for j in range(2):
            br = lagrange(c, c.x(i), c.du(j))
            assert br == (c.one() if i == j else c.zero())
    f = c.u() * c.du(0) + c.x(1) ** 3
    assert lagrange(c, f, f).is_zero


def test_bracket_mirrors_lagrange():
    c = chart2()
    rng = random.Random(11)
    gens = [c.x(0), c.x(1), c.u(), c.du(0), c.du(1)]
    for _ in range(5):
        def rand_poly():
            p = c.zero()
            for _ in range(4):
                t = c.const(rng.randint(-2, 2))
                for _ in range(rng.randint(0, 3)):
                    t = t * rng.choice(gens)
                p = p + t
            return p
        f, g = rand_poly(), rand_poly()
        lhs = lift(c, f).bracket(lift(c, g))
        rhs = lift(c, lagrange(c, f, g))
        assert (lhs - rhs).is_zero


def test_standard_framing_brackets():
    c = chart2()
    fr = standard_framing(c)
    ok, rep = check_cs_framing(fr)
    assert ok
    assert rep["c"] == c.one()
    assert rep["T"].comps == {"u": c.one()}
    for i in range(2):
        for j in range(2):
            br = fr.U[j].bracket(fr.X[i])
            expect = VectorField(c, {"u": c.one() if i == j else c.zero()})
            assert (br - expect).is_zero


def test_framing_missing_direction_fails():
    c = chart2()
    fr = standard_framing(c)
    bad = CSFraming(c, fr.X, [fr.U[0], fr.U[0]])
    ok, rep = check_cs_framing(bad)
    assert not ok


def test_prolong_constant_and_coordinates():
    c2 = chart2().to_order(2)
    S = prolong(c2, c2.one())
    assert set(S.comps) == {"u"}
    for i in range(2):
        S = prolong(c2, c2.x(i))
        for key in c2.jet2.values():
            assert key not in S.comps


def test_prolong_restricts_to_lift():
    c2 = chart2().to_order(2)
    f = c2.u() * c2.du(1) - c2.x(0) ** 2
    S2 = prolong(c2, f)
    S1 = lift(c2, f)
    for nm in c2.first_jet_names():
        assert (S2.coeff(nm) - S1.coeff(nm)).is_zero


def test_prolong3_verifies():
    c3 = Chart(2, order=3)
    f = c3.du(0) * c3.du(1)
    prolong(c3, f)  # raises if the contact system is not preserved


def test_mobius_identity_and_translation():
    c = chart2()
    one, zero = c.one(), c.zero()
    I = [[one, zero], [zero, one]]
    O = [[zero, zero], [zero, zero]]
    X = [[c.du(0), c.x(0)], [c.x(0), c.u()]]
    out = mobius((I, O, O, I), X, c.table)
    for i in range(2):
        for j in range(2):
            assert out[i][j] == RatFunc.wrap(X[i][j])
    Cm = [[c.x(1), zero], [zero, one]]
    out = mobius((I, O, Cm, I), X, c.table)
    assert out[0][0] == RatFunc.wrap(X[0][0] + c.x(1))
    assert out[1][0] == RatFunc.wrap(X[1][0])


def test_mobius_group_action():
    c = chart2()
    rng = random.Random(2)

    def rand_sp():
        # random symplectic-ish block matrices: use triangular CS elements
        a = qq(rng.randint(1, 3))
        b = qq(rng.randint(-2, 2))
        one, zero = c.one(), c.zero()
        A = [[one * a, zero], [zero, one]]
        B = [[zero, zero], [zero, zero]]
        Cm = [[one * b, zero], [zero, zero]]
        D = [[one / a, zero], [zero, one]]
        return A, B, Cm, D

    X = [[c.du(0), c.x(0)], [c.x(0), c.u()]]
    for _ in range(4):
        g = rand_sp()
        h = rand_sp()
        inner = mobius(h, X, c.table)
        lhs = mobius(g, [[e for e in row] for row in inner], c.table)
        gh = _compose(g, h, c)
        rhs = mobius(gh, X, c.table)
        for i in range(2):
            for j in range(2):
                assert lhs[i][j] == rhs[i][j]


def _compose(g, h, c):
    A1, B1, C1, D1 = g
    A2, B2, C2, D2 = h

    def mm(P, Q):
        return [[sum((P[i][k] * Q[k][j] for k in range(2)), c.zero())
                 for j in range(2)] for i in range(2)]

    def madd(P, Q):
        return [[P[i][j] + Q[i][j] for j in range(2)] for i in range(2)]

    # block product (A1 B1; C1 D1)(A2 B2; C2 D2)
    return (madd(mm(A1, A2), mm(B1, C2)), madd(mm(A1, B2), mm(B1, D2)),
            madd(mm(C1, A2), mm(D1, C2)), madd(mm(C1, B2), mm(D1, D2)))


def test_lift_rejects_second_jet_dependence():
    import pytest
    c2 = Chart(2, order=2)
    with pytest.raises(ValueError):
        lift(c2, c2.d2u(0, 0))


def test_mobius_singular_raises():
    import pytest
    c = chart2()
    one, zero = c.one(), c.zero()
    O = [[zero, zero], [zero, zero]]
    X = [[c.du(0), c.x(0)], [c.x(0), c.u()]]
    with pytest.raises(ValueError, match="frame change undefined"):
        mobius((O, O, O, [[one, zero], [zero, one]]), X, c.table)


def test_expand_in_framing_fast_and_slow_agree():
    c = chart2()
    fr = standard_framing(c)
    field = fr.X[0].scale(c.u()) + fr.U[1].scale(c.x(0) ** 2) + \
        VectorField(c, {"u": c.du(1)})
    rho, mu, tau = expand_in_framing(fr, field)
    assert rho[0] == c.u() and rho[1].is_zero
    assert mu[1] == c.x(0) ** 2 and mu[0].is_zero
    assert tau == c.du(1)
