"""Catalog of concrete models with expected data, and their verification.

The JSON catalog shipped with the package holds the homogeneous plane
models (framings, symmetry lists, root types, claimed standard-coordinate
systems) and the conventions for the explicit matrix comparisons.  The
deformed models for every simple type and the degenerate-type families
are generated here from closed-form index rules.  Verification never
overwrites expected data: every record is checked against fresh
computation.
"""

from __future__ import annotations

import importlib.resources as resources
import itertools
import json

from .curvature import g2_kappa, root_type, symmetry_bound_for_root_type, \
    typeA_invariants, typeC_torsions
from .jets import Chart, CSFraming, VectorField, lagrange, standard_framing
from .jordan import JordanModel, build_jordan, tensor_get
from .linalg import nullspace
from .models import (curved_to_jet, flat_E_values, is_symmetry_complete_2nd,
                     is_symmetry_complete_3rd, is_symmetry_V, tparams)
from .realize import SpanBasis, descriptor, flat_realization
from .rings import (PARAMETER, QQ0, QQ1, RatFunc, VarTable, parse_expr,
                    qq)


def load_catalog():
    with resources.files("gcontact.data").joinpath(
            "catalog.json").open("r") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# plane models
# ---------------------------------------------------------------------------


class PlaneModel:
    """One homogeneous plane record: framing, symmetries, expectations."""

    def __init__(self, data):
        self.name = data["name"]
        self.expected_root_type = list(data["root_type"])
        self.expected_count = data["count"]
        self.pde = data.get("pde")
        expo = []
        joined = " ".join(data["symmetries"])
        if "ex" in joined:
            expo.append(("ex", {"x": 1}))
        if "ey" in joined:
            expo.append(("ey", {"y": 1}))
        self.chart = Chart(2, base_names=["x", "y"], jet1_names=["p", "q"],
                           params=tparams(2), exponentials=expo)

        def field(d):
            comps = {}
            for nm, expr in d.items():
                v = parse_expr(expr, self.chart.table)
                comps[nm] = v.as_poly() if v.is_poly() else v
            return VectorField(self.chart, comps)

        self.framing = CSFraming(self.chart,
                                 [field(data["X0"]), field(data["X1"])],
                                 [field(data["U0"]), field(data["U1"])])
        self.symmetries = [parse_expr(s, self.chart.table).as_poly()
                           for s in data["symmetries"]]


def plane_models():
    return [PlaneModel(d) for d in load_catalog()["plane_models"]]


def verify_plane_model(model, J=None):
    """Curvature root type, symmetry list, closure, count, bound, and the
    claimed standard-coordinate system."""
    if J is None:
        J = build_jordan("J1").with_dual()
    out = {"name": model.name}
    kappa = g2_kappa(J, model.framing)
    out["kappa_nonzero"] = not kappa.is_zero
    got_rt = root_type(kappa) if not kappa.is_zero else None
    out["root_type"] = got_rt
    out["root_type_ok"] = got_rt == model.expected_root_type
    sym_ok = True
    for f in model.symmetries:
        if not is_symmetry_V(J, model.framing, f):
            sym_ok = False
            break
    out["symmetries_ok"] = sym_ok
    span = SpanBasis()
    count = 0
    for f in model.symmetries:
        new, _ = span.insert(f, count)
        if new:
            count += 1
    closed = True
    for i in range(len(model.symmetries)):
        for j in range(i + 1, len(model.symmetries)):
            br = lagrange(model.chart, model.symmetries[i],
                          model.symmetries[j])
            if br.is_zero:
                continue
            if span.coords_of(br) is None:
                closed = False
    out["closed"] = closed
    out["count"] = count
    out["count_ok"] = count == model.expected_count
    out["bound_ok"] = count <= symmetry_bound_for_root_type(
        model.expected_root_type)
    out["pde_ok"] = verify_plane_pde(model, J) if model.pde else None
    out["ok"] = all(v for k, v in out.items()
                    if k.endswith("_ok") and v is not None) and closed
    return out


def plane_report_json():
    """Per-model report with framing, curvature in LaTeX, root type,
    symmetry count, expectations and verdict."""
    from .curvature import g2_kappa, root_type
    from .emit import poly_latex
    from .jordan import catalog_model
    J = catalog_model("J1")
    out = []
    for model in plane_models():
        rep = verify_plane_model(model, J)
        kappa = g2_kappa(J, model.framing)
        parts = []
        for k, c in enumerate(kappa.coeffs):
            if c.is_zero:
                continue
            parts.append("(%s) r^{%d} s^{%d}" % (poly_latex(c), 7 - k, k))
        out.append({
            "name": model.name,
            "framing": {lbl: str(F) for lbl, F in zip(
                ("X0", "X1", "U0", "U1"), model.framing.fields())},
            "kappa": " + ".join(parts) if parts else "0",
            "root_type": rep["root_type"],
            "symmetry_count": rep["count"],
            "expected": {"root_type": model.expected_root_type,
                         "count": model.expected_count},
            "pass": rep["ok"],
        })
    return json.dumps(out, indent=1, sort_keys=True)


def verify_plane_pde(model, J):
    """The standard-coordinate system claimed in the catalog matches the
    frame-changed parametric system, identically in the parameter."""
    sys = curved_to_jet(J, model.framing)
    c2 = sys.chart
    u11 = sys.equations[(1, 1)]
    # claims are expressions in (x, y, u, p, q, T) with T the value of u_yy
    names = [nm for nm in ("x", "y", "u", "p", "q", "T") if True]
    T = VarTable([(nm, PARAMETER) for nm in names])
    images = {"x": c2.var("x"), "y": c2.var("y"), "u": c2.var("u"),
              "p": c2.var("p"), "q": c2.var("q")}

    def check(key, claim):
        expr = parse_expr(claim, T)
        # substitute T -> u11(t) exactly
        num = _map_ratfunc(expr, c2, images, u11)
        return (num - sys.equations[key]).is_zero

    return check((0, 0), model.pde["uxx"]) and check((0, 1), model.pde["uxy"])


def _map_ratfunc(expr, chart, images, Tval):
    imgs = dict(images)
    num = expr.num
    den = expr.den
    full_imgs = {}
    for nm in set(num.table.names[i] for i in
                  num.variables() | den.variables()):
        if nm == "T":
            continue
        full_imgs[nm] = imgs[nm]
    # expand T through polynomial composition over the function field
    def map_poly(p):
        out = None
        for mono, coef in p.terms.items():
            term = RatFunc.wrap(chart.const(coef))
            for i, e in mono:
                nm = p.table.names[i]
                base = Tval if nm == "T" else RatFunc.wrap(full_imgs[nm])
                term = term * base ** e
            out = term if out is None else out + term
        return out if out is not None else RatFunc.wrap(chart.zero())

    return map_poly(num) / map_poly(den)


# ---------------------------------------------------------------------------
# deformed (submaximal) structures
# ---------------------------------------------------------------------------


def submax_framing(desc, c_index):
    """X_0 = d/dx^0 + u_0 d/du + x^c d/du_0 with the other fields standard.

    c_index is 0-based in the Jordan block (coordinate x^{c_index + 1}).
    """
    chart = Chart(desc.n, params=tparams(desc.n))
    fr = standard_framing(chart)
    X0 = fr.X[0] + VectorField(chart, {chart.jet1_names[0]:
                                       chart.x(c_index + 1)})
    return CSFraming(chart, [X0] + fr.X[1:], fr.U)


def submax_explicit_symmetries(desc, c_index):
    """The 3n + 1 closed-form generating functions of the deformed model."""
    J = desc.jordan()
    chart = Chart(desc.n, params=tparams(desc.n))
    n = desc.n
    zero = chart.zero()
    x0 = chart.x(0)
    out = [("1", chart.one())]
    for i in range(n):
        f = chart.x(i)
        out.append(("x%d" % i, f))
    for i in range(n):
        f = chart.du(i)
        if i == c_index + 1:
            f = f - x0 * x0 / 2
        out.append(("u%d-corr" % i if i == c_index + 1 else "u%d" % i, f))
    scaling = 7 * chart.u() - 2 * x0 * chart.du(0) - 3 * sum(
        (chart.x(a) * chart.du(a) for a in range(1, n)), zero)
    out.append(("scaling", scaling))
    xw = [chart.x(a) for a in range(1, n)]
    gX = J.grad(xw, zero)
    for a in range(1, n):
        f = x0 * chart.du(a) + qq(3, 2) * gX[a - 1]
        if a == c_index + 1:
            f = f - x0 ** 3 / 6
        out.append(("fminus%d" % a, f))
    return chart, out


def submax_A_solutions(desc, c_index):
    """Solutions of the linear system pinning the extra symmetries.

    Unknowns A^a_b and k subject to A^a_{(b} C_{de)a} = 0 and
    A^c_b = k delta^c_b; each solution yields the generating function
    7 A^a_b x^b u_a - k (3 x^0 u_0 + x^a u_a).
    """
    J = desc.jordan()
    N = J.dimW

    def unk(a, b):
        return a * N + b

    K = N * N
    rows = []
    for tri in itertools.combinations_with_replacement(range(N), 3):
        row = {}
        for perm in set(itertools.permutations(tri)):
            b, d, e = perm
            for a in range(N):
                v = tensor_get(J.C, d, e, a)
                if v:
                    row[unk(a, b)] = row.get(unk(a, b), QQ0) + v
        row = {k2: v for k2, v in row.items() if v}
        if row:
            rows.append(row)
    for b in range(N):
        row = {unk(c_index, b): QQ1}
        if b == c_index:
            row[K] = -QQ1
        rows.append(row)
    return nullspace(rows, K + 1)


def submax_structure(desc, c_index, verify=True):
    """(framing, generating functions, count) for the deformed model."""
    J = desc.jordan()
    N = J.dimW
    chart, named = submax_explicit_symmetries(desc, c_index)
    sols = submax_A_solutions(desc, c_index)
    gens = [f for _, f in named]
    zero = chart.zero()
    for vec in sols:
        k = vec.get(N * N, QQ0)
        f = -k * (3 * chart.x(0) * chart.du(0) + sum(
            (chart.x(a) * chart.du(a) for a in range(1, desc.n)), zero))
        for a in range(N):
            for b in range(N):
                c = vec.get(a * N + b, QQ0)
                if c:
                    f = f + 7 * c * chart.x(b + 1) * chart.du(a + 1)
        gens.append(f)
    count = 3 * desc.n + 1 + len(sols)
    framing = submax_framing(desc, c_index)
    report = {"count": count, "n_solutions": len(sols)}
    if verify:
        span = SpanBasis()
        independent = 0
        for f in gens:
            new, _ = span.insert(f, independent)
            if new:
                independent += 1
        report["independent"] = independent
        report["independent_ok"] = independent == count
        sym_ok = True
        extra = chart.x(c_index + 1)
        for f in gens:
            if not is_symmetry_V(J, framing, f):
                sym_ok = False
                break
        report["symmetries_ok"] = sym_ok
    return framing, gens, count, report


def submax_expected(desc, c_index):
    """Expected count for the chosen deformation direction."""
    if isinstance(desc.submax, dict):
        J = desc.jordan()
        m = J.dimW - 1
        # the pairing vanishes on the first basis vector iff m >= 2
        if c_index == J.dimW - 1:
            return desc.submax["S21"]
        return desc.submax["S23"] if m >= 2 else desc.submax["S21"]
    return desc.submax


def submax_pde(desc, c_index):
    """Standard-coordinate parametric systems of the deformed structure."""
    from .models import emit_F
    J = desc.jordan()
    framing = submax_framing(desc, c_index)
    extra_name = "x%d" % (c_index + 1)
    sys_E = curved_to_jet(J, framing)
    c2 = sys_E.chart
    extra = c2.var(extra_name)
    expect = flat_E_values(J, c2)
    ok = True
    for key, val in sys_E.equations.items():
        want = expect[key] + (extra if key == (0, 0) else c2.zero())
        if not (val - want).is_zero:
            ok = False
    sys_F = emit_F(J, chart2=c2, extra=extra)
    return sys_E, sys_F, ok


# ---------------------------------------------------------------------------
# degenerate-type families
# ---------------------------------------------------------------------------


def ac_family(family, n):
    """Model and symmetry list for one of the four degenerate families.

    family in {"A1", "A2", "C1", "C2"}; indices in the returned data are
    0-based.  Counts follow the closed formulas n^2+4, n^2+4,
    2n^2-n+5, (3n^2+n+8)/2.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    order = 2 if family.startswith("A") else 3
    chart = Chart(n, order=order)
    x = [chart.x(i) for i in range(n)]
    p = [chart.du(i) for i in range(n)]
    u = chart.u()
    zero = chart.zero()
    xu = sum((x[i] * p[i] for i in range(n)), zero)
    syms = []
    if family == "A1":
        rhs = {(0, 0): x[n - 1]}
        syms.append(chart.one())
        syms += [x[i] for i in range(n)]
        syms += [p[k] for k in range(n) if k != n - 1]
        syms += [x[i] * p[l] for i in range(n) for l in range(n)
                 if l not in (0, n - 1)]
        syms.append(x[0] ** 2 - 2 * p[n - 1])
        syms.append(x[0] * p[n - 1] - x[0] ** 3 / 6)
        syms.append(x[0] * p[0] - 2 * x[n - 1] * p[n - 1])
        syms.append(u - xu + x[0] * p[0])
        expected = n * n + 4
        flags = {"tau_E": True, "tau_F": False, "W": False}
    elif family == "A2":
        rhs = {(0, 0): p[n - 1] * p[n - 1]}
        syms.append(chart.one())
        syms += [x[k] for k in range(n) if k != n - 1]
        syms += [p[i] for i in range(n)]
        syms += [x[k] * p[l] for k in range(n) for l in range(n)
                 if k != n - 1 and l != 0]
        syms.append(p[n - 1] * x[0] ** 2 + x[n - 1])
        syms.append(u - xu - x[n - 1] * p[n - 1] / 2)
        syms.append(x[0] * p[0] + x[n - 1] * p[n - 1])
        expected = n * n + 4
        flags = {"tau_E": False, "tau_F": False, "W": True}
    elif family == "C1":
        rhs = {(0, 0, 0): x[1]}
        syms.append(chart.one())
        syms += [x[i] for i in range(n)]
        syms += [p[k] for k in range(n) if k != 1]
        syms += [x[i] * x[j] for i in range(n) for j in range(i, n)]
        syms += [x[i] * p[l] for i in range(n) for l in range(2, n)]
        syms += [p[k] * p[l] for k in range(2, n) for l in range(k, n)]
        syms.append(u - x[1] * p[1])
        syms.append(6 * p[1] - x[0] ** 3)
        syms.append(24 * x[0] * p[1] - x[0] ** 4)
        syms.append(x[0] * p[0] - 3 * x[1] * p[1])
        expected = 2 * n * n - n + 5
        flags = {"tau_E": True, "tau_EV": False}
    elif family == "C2":
        key = tuple(sorted((n - 1, n - 1, n - 1)))
        rhs = {key: chart.d2u(0, 0)}
        syms.append(chart.one())
        syms += [x[i] for i in range(n)]
        syms.append(u)
        syms += [p[i] for i in range(n)]
        syms += [x[k] * x[l] for k in range(n) for l in range(k, n)
                 if (k, l) != (0, 0)]
        syms += [x[k] * p[l] for k in range(1, n) for l in range(n)
                 if l != n - 1]
        syms.append(3 * x[0] ** 2 + x[n - 1] ** 3)
        syms.append(3 * x[0] * p[0] + 2 * x[n - 1] * p[n - 1] - 5 * u)
        expected = (3 * n * n + n + 8) // 2
        flags = {"tau_E": False, "tau_EV": True}
    else:
        raise ValueError("unknown family %r" % family)
    return {"family": family, "n": n, "chart": chart, "rhs": rhs,
            "symmetries": syms, "expected": expected, "flags": flags}


def verify_ac_family(family, n):
    rec = ac_family(family, n)
    chart, rhs, syms = rec["chart"], rec["rhs"], rec["symmetries"]
    out = {"family": family, "n": n, "expected": rec["expected"]}
    span = SpanBasis()
    count = 0
    for f in syms:
        new, _ = span.insert(f, count)
        if new:
            count += 1
    out["count"] = count
    out["count_ok"] = count == rec["expected"]
    if family.startswith("A"):
        full = {key: rhs.get(key, chart.zero())
                for key in itertools.combinations_with_replacement(
                    range(n), 2)}
        sym_ok = all(is_symmetry_complete_2nd(chart, full, f,
                                              require_point=True)
                     for f in syms)
        inv = typeA_invariants(n, rhs)
        flags_ok = (inv["tau_E"] == rec["flags"]["tau_E"]
                    and inv["tau_F"] == rec["flags"]["tau_F"]
                    and inv["W"] == rec["flags"]["W"])
    else:
        full = {key: rhs.get(key, chart.zero())
                for key in itertools.combinations_with_replacement(
                    range(n), 3)}
        sym_ok = all(is_symmetry_complete_3rd(chart, full, f) for f in syms)
        inv = typeC_torsions(n, rhs)
        flags_ok = ((not inv["tau_E_zero"]) == rec["flags"]["tau_E"]
                    and (not inv["tau_EV_zero"]) == rec["flags"]["tau_EV"])
    out["symmetries_ok"] = sym_ok
    out["flags_ok"] = flags_ok
    closed = True
    for i in range(len(syms)):
        for j in range(i + 1, len(syms)):
            br = lagrange(chart, syms[i], syms[j])
            if br.is_zero:
                continue
            if span.coords_of(br) is None:
                closed = False
    out["closed"] = closed
    out["ok"] = out["count_ok"] and sym_ok and flags_ok and closed
    return out


# ---------------------------------------------------------------------------
# explicit matrix comparisons
# ---------------------------------------------------------------------------


def mat3_model():
    """Alternative 9-dimensional model: all 3x3 matrices with cubic twice
    the determinant (the convention of the explicit matrix display)."""
    names = []
    for r in range(1, 4):
        for s in range(1, 4):
            names.append("a%d%d" % (r, s))
    T = VarTable([("t%d" % (k + 1), PARAMETER) for k in range(9)])
    t = {}
    k = 0
    for r in range(3):
        for s in range(3):
            t[(r, s)] = T.var("t%d" % (k + 1))
            k += 1
    det = (t[(0, 0)] * (t[(1, 1)] * t[(2, 2)] - t[(1, 2)] * t[(2, 1)])
           - t[(0, 1)] * (t[(1, 0)] * t[(2, 2)] - t[(1, 2)] * t[(2, 0)])
           + t[(0, 2)] * (t[(1, 0)] * t[(2, 1)] - t[(1, 1)] * t[(2, 0)]))
    return JordanModel("Mat3*2det", 9, 2 * det, T), names


APPENDIX_COORDS = {
    "G2": ["l"],
    "D4": ["l1", "l2", "l3"],
    "F4": ["a11", "a22", "a33", "a12", "a13", "a23"],
    "E6": ["a11", "a12", "a13", "a21", "a22", "a23", "a31", "a32", "a33"],
}


def _appendix_table(names):
    return VarTable([(nm, PARAMETER) for nm in names])


def appendix_expected(G, m=None):
    """Transcription of the displayed explicit (u_ij) matrices."""
    if G == "G2":
        T = _appendix_table(APPENDIX_COORDS["G2"])
        rows = [["1/3*l^3", "1/2*l^2"], ["1/2*l^2", "l"]]
    elif G == "D4":
        T = _appendix_table(APPENDIX_COORDS["D4"])
        rows = [
            ["2*l1*l2*l3", "l2*l3", "l1*l3", "l1*l2"],
            ["l2*l3", "0", "l3", "l2"],
            ["l1*l3", "l3", "0", "l1"],
            ["l1*l2", "l2", "l1", "0"],
        ]
    elif G == "F4":
        T = _appendix_table(APPENDIX_COORDS["F4"])
        det = ("a11*a22*a33-a11*a23^2-a22*a13^2-a33*a12^2"
               "+2*a12*a13*a23")
        c11 = "a22*a33-a23^2"
        c22 = "a11*a33-a13^2"
        c33 = "a11*a22-a12^2"
        c12 = "a13*a23-a12*a33"
        c13 = "a12*a23-a22*a13"
        c23 = "a12*a13-a11*a23"
        rows = [
            [det, "1/2*(%s)" % c11, "1/2*(%s)" % c22, "1/2*(%s)" % c33,
             c12, c13, c23],
            ["1/2*(%s)" % c11, "0", "1/2*a33", "1/2*a22", "0", "0", "-a23"],
            ["1/2*(%s)" % c22, "1/2*a33", "0", "1/2*a11", "0", "-a13", "0"],
            ["1/2*(%s)" % c33, "1/2*a22", "1/2*a11", "0", "-a12", "0", "0"],
            [c12, "0", "0", "-a12", "-a33", "a23", "a13"],
            [c13, "0", "-a13", "0", "a23", "-a22", "a12"],
            [c23, "-a23", "0", "0", "a13", "a12", "-a11"],
        ]
    elif G == "E6":
        T = _appendix_table(APPENDIX_COORDS["E6"])
        det2 = ("2*(a11*a22*a33-a11*a23*a32-a12*a21*a33+a12*a23*a31"
                "+a13*a21*a32-a13*a22*a31)")
        cof = {
            (1, 1): "a22*a33-a23*a32", (1, 2): "a23*a31-a21*a33",
            (1, 3): "a21*a32-a22*a31", (2, 1): "a13*a32-a12*a33",
            (2, 2): "a11*a33-a13*a31", (2, 3): "a12*a31-a11*a32",
            (3, 1): "a12*a23-a13*a22", (3, 2): "a13*a21-a11*a23",
            (3, 3): "a11*a22-a12*a21",
        }
        top = [det2] + [cof[(r, s)] for r in (1, 2, 3) for s in (1, 2, 3)]
        body = {
            (1, 1): {(2, 2): "a33", (2, 3): "-a32", (3, 2): "-a23",
                     (3, 3): "a22"},
            (1, 2): {(2, 1): "-a33", (2, 3): "a31", (3, 1): "a23",
                     (3, 3): "-a21"},
            (1, 3): {(2, 1): "a32", (2, 2): "-a31", (3, 1): "-a22",
                     (3, 2): "a21"},
            (2, 2): {(1, 1): "a33", (1, 3): "-a31", (3, 1): "-a13",
                     (3, 3): "a11"},
            (2, 1): {(1, 2): "-a33", (1, 3): "a32", (3, 2): "a13",
                     (3, 3): "-a12"},
            (2, 3): {(1, 1): "-a32", (1, 2): "a31", (3, 1): "a12",
                     (3, 2): "-a11"},
            (3, 3): {(1, 1): "a22", (1, 2): "-a21", (2, 1): "-a12",
                     (2, 2): "a11"},
            (3, 1): {(1, 2): "a23", (1, 3): "-a22", (2, 2): "-a13",
                     (2, 3): "a12"},
            (3, 2): {(1, 1): "-a23", (1, 3): "a21", (2, 1): "a13",
                     (2, 3): "-a11"},
        }
        order = [(r, s) for r in (1, 2, 3) for s in (1, 2, 3)]
        rows = [top]
        for rs in order:
            row = [cof[rs]]
            for cs in order:
                row.append(body.get(rs, {}).get(cs, "0"))
            rows.append(row)
    elif G == "spin":
        if m is None:
            raise ValueError("spin comparison needs the rank m")
        names = ["v%d" % a for a in range(1, m + 1)] + ["l"]
        T = _appendix_table(names)

        def pair_vv():
            terms = []
            for a in range(1, m + 1):
                b = m + 1 - a
                if a < b:
                    terms.append("2*v%d*v%d" % (a, b))
                elif a == b:
                    terms.append("v%d^2" % a)
            return "+".join(terms)

        rows = [["(%s)*l" % pair_vv()]
                + ["v%d*l" % (m + 1 - b) for b in range(1, m + 1)]
                + ["1/2*(%s)" % pair_vv()]]
        for a in range(1, m + 1):
            row = ["v%d*l" % (m + 1 - a)]
            for b in range(1, m + 1):
                row.append("l" if b == m + 1 - a else "0")
            row.append("v%d" % (m + 1 - a))
            rows.append(row)
        rows.append(["1/2*(%s)" % pair_vv()]
                    + ["v%d" % (m + 1 - b) for b in range(1, m + 1)] + ["0"])
    else:
        raise ValueError("no explicit matrix recorded for %r" % G)
    parsed = [[parse_expr(e, T).as_poly() for e in row] for row in rows]
    return T, parsed


def appendix_model(G):
    """(JordanModel, scale) whose tangent-lift matrix is displayed."""
    scales = load_catalog()["appendix_scale"]
    if G == "G2":
        return build_jordan("J1"), scales["G2"]
    if G == "D4":
        return build_jordan("J3(0)").rescale(scales["D4"]), scales["D4"]
    if G == "F4":
        return build_jordan("J3(R)"), scales["F4"]
    if G == "E6":
        return mat3_model()[0], scales["E6"]
    if G.startswith("B") or G.startswith("D"):
        return build_jordan(descriptor(G).jordan_label), scales["spin"]
    raise ValueError("no explicit matrix recorded for %r" % G)


def appendix_emit(G):
    """Render the computed (u_ij) matrix and diff against the display.

    Returns (rows_of_strings, ok).  Comparison is byte-for-byte on the
    canonical rendering after parsing the transcription.
    """
    if G.startswith("B") or (G.startswith("D") and G not in ("D4",)):
        J = appendix_model(G)[0]
        m = J.dimW - 1
        T, expected = appendix_expected("spin", m=m)
    else:
        J, _scale = appendix_model(G)
        T, expected = appendix_expected(G)
    n = J.dimW + 1
    coords = [T.var(T.names[k]) for k in range(J.dimW)]
    zero = T.zero()
    vals = {}
    vals[(0, 0)] = J.cubic(coords, zero)
    grad = J.grad(coords, zero)
    hess = J.hess(coords, zero)
    for a in range(1, n):
        vals[(0, a)] = qq(3, 2) * grad[a - 1]
        vals[(a, 0)] = vals[(0, a)]
        for b in range(1, n):
            vals[(a, b)] = 3 * hess[a - 1][b - 1]
    got = [[str(vals[(i, j)]) for j in range(n)] for i in range(n)]
    want = [[str(e) for e in row] for row in expected]
    return got, got == want


def appendix_scale_consistent(G):
    """Rescaling the cubic does not change the flat symmetry dimension."""
    J, scale = appendix_model(G)
    if G.startswith("B") or (G.startswith("D") and G != "D4"):
        expected = descriptor(G).dim_g
    else:
        expected = descriptor(G).dim_g
    J = J.with_dual()
    real = flat_realization(J, expected_dim=expected, name=G + "-explicit")
    return real.dim == expected
