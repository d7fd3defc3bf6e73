import json

import pytest

from gcontact.jordan import (CompositionAlgebra, build_jordan,
                             dual_closed_form_matches, tensor_get)
from gcontact.rings import qq


ALL_LABELS = ["J1", "JS1", "JS3", "JS4", "J3(0)", "J3(R)", "J3(C)", "J3(H)",
              "J3(O)"]


def test_composition_algebras_construct():
    for d in (1, 2, 4, 8):
        CompositionAlgebra(d)  # raises on any structure failure


def test_j1():
    J = build_jordan("J1")
    assert J.dimW == 1
    t = J.tvars[0]
    assert J.cubic([t]) == t ** 3 / 3


def test_js1_components():
    J = build_jordan("JS1")
    assert J.dimW == 2
    # single tensor component on {t1, t1, t2} (the pairing times lambda)
    assert tensor_get(J.C, 0, 0, 1) == qq(1, 3)
    assert tensor_get(J.C, 0, 0, 0) == 0
    assert tensor_get(J.C, 1, 1, 1) == 0


def test_spin_cubic_value():
    J = build_jordan("JS3")
    # C((v, lambda)^3) = <v, v> lambda with the anti-identity pairing
    vals = {"t1": 1, "t2": 2, "t3": 3, "t4": 5}
    got = J.cubic_poly.eval_scalar(vals)
    assert got == (2 * 1 * 3 + 2 * 2) * 5


def test_j30_is_diagonal_det():
    J = build_jordan("J3(0)")
    got = J.cubic_poly.eval_scalar({"t1": 2, "t2": 3, "t3": 5})
    assert got == 30


def test_j3r_det():
    J = build_jordan("J3(R)")
    assert J.dimW == 6
    # det of [[1,4,5],[4,2,6],[5,6,3]]
    vals = {"t1": 1, "t2": 2, "t3": 3, "t4": 4, "t5": 5, "t6": 6}
    a = [[1, 4, 5], [4, 2, 6], [5, 6, 3]]
    det = (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
           - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
           + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    assert J.cubic_poly.eval_scalar(vals) == det


def test_j3o_dimensions():
    J = build_jordan("J3(O)")
    assert J.dimW == 27
    assert J.n == 28


@pytest.mark.parametrize("label", ALL_LABELS)
def test_injectivity(label):
    J = build_jordan(label)
    assert J.injectivity_rank() == J.dimW


@pytest.mark.parametrize("label", ALL_LABELS)
def test_dual_identity_and_closed_form(label):
    J = build_jordan(label).with_dual()
    assert J.verify_dual_identities()
    assert dual_closed_form_matches(J)


def test_dual_j1_value():
    J = build_jordan("J1").with_dual()
    s = J.tvars[0]
    assert J.dual([s]) == qq(4, 9) * s ** 3


def test_rescaling_consistency():
    J = build_jordan("JS3").with_dual()
    J2 = J.rescale(qq(5))
    assert J2.verify_dual_identities()


@pytest.mark.parametrize("label,expected", [
    ("J1", 1), ("JS1", 2), ("JS3", 1), ("JS4", 1), ("J3(0)", 1),
    ("J3(R)", 1), ("J3(C)", 1), ("J3(H)", 1),
])
def test_psi_kernel_dims(label, expected):
    J = build_jordan(label)
    dim, basis = J.psi_kernel()
    assert dim == expected
    # identity endomorphism always lies in the kernel
    found_id = False
    for mat in basis:
        diag = [mat[a][a] for a in range(J.dimW)]
        off = [mat[a][b] for a in range(J.dimW) for b in range(J.dimW)
               if a != b]
        if all(d == diag[0] for d in diag) and diag[0] != 0 and \
                all(o == 0 for o in off):
            found_id = True
    if expected == 1:
        assert found_id


def test_psi_kernel_js1_contains_id_span():
    J = build_jordan("JS1")
    dim, basis = J.psi_kernel()
    assert dim == 2
    # identity must lie in the span of the two kernel matrices
    a1 = basis[0]
    a2 = basis[1]
    # solve x*a1 + y*a2 = id on the diagonal and check off-diagonal
    import itertools
    from gcontact.linalg import solve_unique
    rows = []
    rhs = []
    for i, j in itertools.product(range(2), repeat=2):
        rows.append({0: a1[i][j], 1: a2[i][j]})
        rhs.append(qq(1) if i == j else qq(0))
    sol = solve_unique(rows, rhs, 2)  # raises if id is not in the span


def test_json_export():
    J = build_jordan("JS1").with_dual()
    data = json.loads(J.tensors_json())
    assert data["dim"] == 2
    assert [[0, 0, 1], "1/3"] in data["cubic"]
