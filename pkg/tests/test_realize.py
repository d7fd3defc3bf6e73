import pytest

from gcontact.jets import lagrange
from gcontact.realize import (close_under_bracket, descriptor,
                              f0_report, f4_sl3_homomorphism_check,
                              flat_chart, flat_generators, grading_element,
                              spin_f0_span_matches, top_slot, typeA_flat,
                              typeC_flat)

SMALL = ["G2", "B3", "B4", "D4", "D5", "F4"]


@pytest.fixture(scope="module")
def reals():
    return {name: flat_generators(descriptor(name)) for name in SMALL}


@pytest.mark.parametrize("name,dim", [
    ("G2", 14), ("B3", 21), ("B4", 36), ("D4", 28), ("D5", 45), ("F4", 52)])
def test_flat_dimension(reals, name, dim):
    assert reals[name].dim == dim
    d = descriptor(name)
    if d.dim_oracle is not None:
        assert d.dim_oracle == dim


def test_top_slot_eigenvalue():
    d = descriptor("G2")
    J = d.jordan()
    chart = flat_chart(d)
    f = top_slot(J, chart)
    Z = grading_element(chart)
    assert (lagrange(chart, Z, f) - 2 * f).is_zero
    # [1, f] reproduces the scaling element
    assert (lagrange(chart, chart.one(), f) - Z).is_zero


@pytest.mark.parametrize("name,cells", [
    ("G2", {-2: 1, -1: 4, 0: 4, 1: 4, 2: 1}),
    ("B3", {-2: 1, -1: 6, 0: 7, 1: 6, 2: 1}),
    ("F4", {-2: 1, -1: 14, 0: 22, 1: 14, 2: 1}),
])
def test_grading(reals, name, cells):
    rep = reals[name].grading_report()
    assert rep == cells
    n = descriptor(name).n
    dim = reals[name].dim
    assert rep[-1] == 2 * n and rep[0] == dim - 4 * n - 2 and rep[-2] == 1


@pytest.mark.parametrize("name", SMALL)
def test_closure_and_jacobi(reals, name):
    r = reals[name]
    r.structure_constants()  # raises if a bracket escapes the span
    assert r.jacobi_structure_constants()


@pytest.mark.parametrize("name", ["G2", "B3"])
def test_polynomial_jacobi_small(reals, name):
    assert reals[name].jacobi_polynomial()


@pytest.mark.parametrize("name", SMALL)
def test_killing_rank(reals, name):
    r = reals[name]
    assert r.killing_rank() == r.dim


def test_weighted_degrees(reals):
    r = reals["G2"]
    for f, g in zip(r.basis, r.grades):
        assert f.is_weighted_homogeneous()
        assert f.weighted_degree() == g + 2


def test_close_under_bracket_seeds():
    d = descriptor("G2")
    chart = flat_chart(d)
    assert len(close_under_bracket(chart, [chart.one()])) == 1
    span = close_under_bracket(chart, [chart.x(1), chart.du(1)])
    assert len(span) == 3
    J = d.jordan()
    seeds = [chart.x(i) for i in range(2)] + [chart.du(i) for i in range(2)] \
        + [top_slot(J, chart)]
    assert len(close_under_bracket(chart, seeds)) == 14


@pytest.mark.parametrize("name", ["B3", "D4", "F4"])
def test_seed_generation_matches(reals, name):
    d = descriptor(name)
    chart = flat_chart(d)
    J = d.jordan()
    seeds = [chart.x(i) for i in range(d.n)] + \
        [chart.du(i) for i in range(d.n)] + [top_slot(J, chart)]
    span = close_under_bracket(chart, seeds)
    assert len(span) == d.dim_g
    # same span as the closed-form realization
    r = reals[name]
    for f in span:
        assert r.contains(f)


def test_abelian_killing_rank_zero():
    from gcontact.jets import Chart
    from gcontact.realize import LieRealization
    chart = Chart(1)
    r = LieRealization(chart, [chart.x(0), chart.one()], ["x", "1"], [0, 0],
                       grading_elt=None, name="ab2")
    # [x^0, 1] = 0: abelian
    assert r.killing_rank() == 0


@pytest.mark.parametrize("name", SMALL)
def test_f0_structure(reals, name):
    rep = f0_report(descriptor(name))
    assert rep["ok"], rep


def test_spin_rotation_span():
    assert spin_f0_span_matches(descriptor("B4"))
    assert spin_f0_span_matches(descriptor("D5"))


def test_f4_sl3_map():
    assert f4_sl3_homomorphism_check()


def test_typeA_flat():
    for n in (2, 3):
        r = typeA_flat(n)
        assert r.dim == (n + 2) ** 2 - 1
        r.structure_constants()
        assert r.killing_rank() == r.dim
        rep = r.grading_report()
        assert rep == {-2: 1, -1: 2 * n, 0: n * n + 1, 1: 2 * n, 2: 1}


def test_typeC_flat():
    for n in (2, 3):
        r = typeC_flat(n)
        assert r.dim == (n + 1) * (2 * n + 3)
        r.structure_constants()
        assert r.killing_rank() == r.dim
        rep = r.grading_report()
        assert rep[-3] == 1 and rep[3] == 1
        assert rep[-2] == n and rep[2] == n
        assert rep[-1] == n + n * (n + 1) // 2
        assert rep[0] == n * n + 1


def test_typeA_overlap_with_jordan_free_top_slot():
    # the degenerate realization shares the same top slot with C = 0
    r = typeA_flat(2)
    chart = r.chart
    xu = chart.x(0) * chart.du(0) + chart.x(1) * chart.du(1)
    f = chart.u() * (chart.u() - xu)
    assert r.contains(f)
