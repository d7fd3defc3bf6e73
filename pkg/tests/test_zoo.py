import pytest

from gcontact.realize import descriptor
from gcontact.zoo import (ac_family, appendix_emit, appendix_scale_consistent,
                          load_catalog, mat3_model, plane_models,
                          submax_expected, submax_pde, submax_structure,
                          verify_ac_family, verify_plane_model)


def test_catalog_loads():
    cat = load_catalog()
    assert cat["version"] == 1
    assert len(cat["plane_models"]) == 15


@pytest.fixture(scope="module")
def models():
    return plane_models()


def test_plane_model_counts(models):
    counts = [m.expected_count for m in models]
    assert counts == [7, 6, 6, 6, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 4]


@pytest.mark.parametrize("idx", range(15))
def test_plane_models_verify(models, idx):
    rep = verify_plane_model(models[idx])
    assert rep["ok"], rep


@pytest.mark.parametrize("name,c,expected", [
    ("G2", 0, 7), ("D4", 0, 15), ("F4", 0, 28),
    ("B3", 0, 11), ("B3", 1, 11),
    ("B4", 0, 19), ("B4", 3, 20),
    ("D5", 0, 24), ("D5", 4, 26),
])
def test_submax_counts_small(name, c, expected):
    d = descriptor(name)
    assert submax_expected(d, c) == expected
    framing, gens, count, rep = submax_structure(d, c)
    assert count == expected
    assert rep["independent_ok"] and rep["symmetries_ok"], rep
    # strictly below the flat dimension
    assert count < d.dim_g


def test_submax_pde_shape():
    d = descriptor("G2")
    sysE, sysF, ok = submax_pde(d, 0)
    assert ok
    c2 = sysE.chart
    t = c2.var("t1")
    assert sysE.equations[(0, 0)] == t ** 3 / 3 + c2.var("x1")
    assert sysE.equations[(1, 1)] == t


@pytest.mark.parametrize("family,n,expected", [
    ("A1", 2, 8), ("A1", 3, 13), ("A2", 2, 8), ("A2", 3, 13),
    ("C1", 2, 11), ("C1", 3, 20), ("C2", 2, 11), ("C2", 3, 19),
])
def test_ac_families(family, n, expected):
    rec = ac_family(family, n)
    assert rec["expected"] == expected
    rep = verify_ac_family(family, n)
    assert rep["ok"], rep


@pytest.mark.parametrize("G", ["G2", "D4", "F4", "E6", "B3", "B4", "D5"])
def test_appendix_matrices(G):
    got, ok = appendix_emit(G)
    assert ok, got


def test_mat3_model_valid():
    J, names = mat3_model()
    assert J.dimW == 9
    J.with_dual()
    assert J.verify_dual_identities()


@pytest.mark.parametrize("G", ["G2", "D4", "F4", "E6"])
def test_appendix_scale_consistency(G):
    assert appendix_scale_consistent(G)


def test_plane_report_json():
    import json
    from gcontact.zoo import plane_report_json
    data = json.loads(plane_report_json())
    assert len(data) == 15
    for rec in data:
        assert set(rec) == {"name", "framing", "kappa", "root_type",
                            "symmetry_count", "expected", "pass"}
        assert rec["pass"] is True
