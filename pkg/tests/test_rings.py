import random

import pytest

from gcontact.rings import (BASE, DEPENDENT, EXPONENTIAL, JET1, PARAMETER,
                            RatFunc, VarTable, parse_expr, parse_poly,
                            poly_gcd, qq, squarefree_binary)
from gcontact.linalg import (Echelon, nullspace, rank_polymat, rank_qq,
                             solve_field, solve_unique)


def table_xyu():
    return VarTable([("x", BASE), ("y", BASE), ("u", DEPENDENT),
                     ("u0", JET1), ("u1", JET1), ("t", PARAMETER)])


def test_power_rule():
    T = table_xyu()
    t = T.var("t")
    p = t ** 3 / 3
    assert p.derive("t") == t ** 2


def test_exponential_product_rule():
    T = VarTable([("x", BASE), ("Ex", EXPONENTIAL, 0, {"x": 1})])
    x, Ex = T.var("x"), T.var("Ex")
    p = Ex * x
    assert p.derive("x") == Ex * (x + 1)
    # Laurent exponents differentiate with the integer factor
    q = Ex ** -2
    assert q.derive("x") == -2 * Ex ** -2


def test_derive_weighted_top_slot_piece():
    T = table_xyu()
    u, x, u1 = T.var("u"), T.var("x"), T.var("u1")
    p = u * (u - x * u1)
    assert p.derive("u") == 2 * u - x * u1


def test_leibniz_random():
    T = table_xyu()
    rng = random.Random(7)
    gens = [T.var(n) for n in ("x", "y", "u", "u0", "u1")]

    def rand_poly():
        p = T.zero()
        for _ in range(4):
            term = T.const(rng.randint(-3, 3))
            for _ in range(rng.randint(0, 3)):
                term = term * rng.choice(gens)
            p = p + term
        return p

    for _ in range(8):
        p, q = rand_poly(), rand_poly()
        for v in ("x", "u0", "u"):
            lhs = (p * q).derive(v)
            rhs = p.derive(v) * q + p * q.derive(v)
            assert lhs == rhs


def test_substitute_is_ring_hom():
    T = table_xyu()
    x, y, u = T.var("x"), T.var("y"), T.var("u")
    p = x ** 2 * y - u
    q = y ** 3 + 2 * x
    b = {"x": y + 1, "y": T.const(2)}
    assert (p + q).substitute(b) == p.substitute(b) + q.substitute(b)
    assert (p * q).substitute(b) == p.substitute(b) * q.substitute(b)
    assert (x ** 2).substitute({"x": T.const(0)}).is_zero
    # cubic form of the one-dimensional algebra at t = 3
    t = T.var("t")
    assert (t ** 3 / 3).substitute({"t": T.const(3)}).constant() == 9


def test_substitute_rejects_exponential():
    T = VarTable([("x", BASE), ("Ex", EXPONENTIAL, 0, {"x": 1})])
    with pytest.raises(ValueError):
        T.var("Ex").substitute({"Ex": T.var("x")})


def test_ratfunc_basics():
    T = table_xyu()
    x, y = T.var("x"), T.var("y")
    r = (x ** 2 - y ** 2) / (x - y)
    assert r == RatFunc.wrap(x + y)
    s = (x / y + y / x)
    assert s * (x * y) == x ** 2 + y ** 2
    d = (x / y).derive("y")
    assert d == RatFunc.make(-x, y ** 2)


def test_poly_gcd():
    T = table_xyu()
    x, y = T.var("x"), T.var("y")
    f = (x + y) ** 2 * (x - 2 * y)
    g = (x + y) * (x + 3 * y)
    h = poly_gcd(f, g)
    assert h == x + y
    assert poly_gcd(x * y, x ** 2).divexact(x).is_constant()


def test_divexact_inexact_raises():
    T = table_xyu()
    x, y = T.var("x"), T.var("y")
    with pytest.raises(ValueError):
        (x ** 2 + y).divexact(x + 1)


def test_nullspace_identity_and_zero():
    eye = [{i: qq(1)} for i in range(3)]
    assert nullspace(eye, 3) == []
    zero = [{} for _ in range(2)]
    basis = nullspace(zero, 3)
    assert len(basis) == 3


def test_nullspace_solves_exactly():
    rng = random.Random(3)
    rows = []
    for _ in range(4):
        rows.append({j: qq(rng.randint(-4, 4)) for j in range(6)
                     if rng.random() < 0.7})
    basis = nullspace(rows, 6)
    ech = Echelon()
    for r in rows:
        ech.insert(r)
    assert len(basis) == 6 - ech.rank
    for v in basis:
        for r in rows:
            s = sum((r[j] * v.get(j, qq(0)) for j in r), qq(0))
            assert s == 0


def test_rank_agreement():
    rows = [{0: qq(1), 1: qq(2)}, {0: qq(2), 1: qq(4)}, {2: qq(5)}]
    assert rank_qq(rows) == 2


def test_solve_unique():
    rows = [{0: qq(2), 1: qq(1)}, {1: qq(3)}]
    x = solve_unique(rows, [qq(5), qq(6)], 2)
    assert x == [qq(3, 2), qq(2)]
    with pytest.raises(ValueError):
        solve_unique([{0: qq(1), 1: qq(1)}], [qq(1)], 2)


def test_rank_polymat_generic():
    T = table_xyu()
    x, y = T.var("x"), T.var("y")
    m = [[x, y], [y, x]]
    assert rank_polymat(m) == 2
    m2 = [[x, y], [x * y, y * y]]
    assert rank_polymat(m2) == 1


def test_solve_field():
    T = table_xyu()
    x, y = T.var("x"), T.var("y")
    sol = solve_field([[x, T.zero()], [T.one(), y]],
                      [x * y, y + y * y])
    assert sol[0] == RatFunc.wrap(y)
    assert sol[1] == RatFunc.wrap(y)


def test_squarefree_binary_trivial():
    T = VarTable([("r", PARAMETER), ("s", PARAMETER)])
    r, s = T.var("r"), T.var("s")
    _, part = squarefree_binary(r ** 7, "r", "s")
    assert part == [7]
    _, part = squarefree_binary(r ** 4 * s ** 3, "r", "s")
    assert part == [4, 3]
    _, part = squarefree_binary(r ** 5 * s ** 2 - r ** 4 * s ** 3, "r", "s")
    assert part == [4, 2, 1]
    with pytest.raises(ValueError):
        squarefree_binary(T.zero(), "r", "s")
    with pytest.raises(ValueError):
        squarefree_binary(r ** 2 + r, "r", "s")


def test_squarefree_multiplicities_sum():
    T = VarTable([("r", PARAMETER), ("s", PARAMETER)])
    r, s = T.var("r"), T.var("s")
    f = (r - s) ** 2 * (r + s) ** 2 * (r - 2 * s) * s * (r + 3 * s)
    _, part = squarefree_binary(f, "r", "s")
    assert sorted(part, reverse=True) == [2, 2, 1, 1, 1]
    assert sum(part) == 7


def test_parser():
    T = table_xyu()
    x, y, u = T.var("x"), T.var("y"), T.var("u")
    assert parse_poly("x^3-3*y^2-6*u*x", T) == x ** 3 - 3 * y ** 2 - 6 * u * x
    assert parse_expr("1/2*(x+y)^2", T) == RatFunc.wrap((x + y) ** 2 / 2)
    assert parse_expr("y^4/(3*(u+x/6)^4)", T) == \
        RatFunc.make(y ** 4, 3 * (u + x / 6) ** 4)


def test_canonical_str():
    T = table_xyu()
    x, y = T.var("x"), T.var("y")
    p = y * x + x ** 2 - 3 * y + T.one()
    assert str(p) == "x^2 + x*y - 3*y + 1"
