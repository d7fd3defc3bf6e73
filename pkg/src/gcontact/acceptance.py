"""The acceptance criteria, each as an executable check.

Every criterion is exact (tolerance zero).  Heavy shared objects (the
realizations with their structure constants) are built once and reused.
"""

from __future__ import annotations

import io
import random

from .realize import (CATALOG, close_under_bracket, descriptor, flat_chart,
                      flat_generators, top_slot, typeA_flat, typeC_flat)

FLAT_DIMS = {"G2": 14, "B3": 21, "B4": 36, "D4": 28, "D5": 45, "F4": 52,
             "E6": 78, "E7": 133, "E8": 248}
EXHAUSTIVE_4WAY = ("G2", "B3", "B4", "D4", "D5", "F4", "E6")
SAMPLED_4WAY = ("E7", "E8")
SUBMAX_EXPECT = {"G2": 7, "F4": 28, "E6": 43, "E7": 76, "E8": 147}
PLANE_COUNTS = [7, 6, 6, 6, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 4]


class _Cache:
    def __init__(self):
        self.reals = {}

    def real(self, name):
        r = self.reals.get(name)
        if r is None:
            r = flat_generators(descriptor(name))
            self.reals[name] = r
        return r


def crit_1_flat_dimensions(cache, seed, jobs):
    got = []
    for name, dim in FLAT_DIMS.items():
        r = cache.real(name)
        d = descriptor(name)
        ok = r.dim == dim
        if d.dim_oracle is not None:
            ok = ok and d.dim_oracle == dim
        got.append(ok)
    return all(got), "dims " + " ".join(
        "%s=%d" % (n, cache.real(n).dim) for n in FLAT_DIMS)


def crit_2_closure_jacobi(cache, seed, jobs):
    oks = []
    for name in FLAT_DIMS:
        r = cache.real(name)
        r.structure_constants()      # exact polynomial-level closure
        oks.append(r.jacobi_structure_constants())
        sample = None if r.dim <= 52 else 300
        oks.append(r.jacobi_polynomial(sample=sample, seed=seed))
    for name in ("G2", "B3", "D4", "F4"):
        d = descriptor(name)
        J = d.jordan()
        chart = flat_chart(d)
        seeds = [chart.x(i) for i in range(d.n)] + \
            [chart.du(i) for i in range(d.n)] + [top_slot(J, chart)]
        span = close_under_bracket(chart, seeds)
        real = cache.real(name)
        oks.append(len(span) == d.dim_g
                   and all(real.contains(f) for f in span))
    return all(oks), "closure, structure-constant and sampled polynomial " \
        "jacobi, seed generation"


def crit_3_killing(cache, seed, jobs):
    oks = []
    for name in FLAT_DIMS:
        r = cache.real(name)
        oks.append(r.killing_rank() == r.dim)
    for n in (2, 3):
        rA = typeA_flat(n)
        rC = typeC_flat(n)
        oks.append(rA.killing_rank() == rA.dim)
        oks.append(rC.killing_rank() == rC.dim)
    return all(oks), "killing rank equals dimension for every realization"


def crit_4_grading(cache, seed, jobs):
    from .jets import lagrange
    from .realize import grading_element
    oks = []
    for name in FLAT_DIMS:
        r = cache.real(name)
        d = descriptor(name)
        rep = r.grading_report()
        n = d.n
        oks.append(rep == {-2: 1, -1: 2 * n, 0: r.dim - 4 * n - 2,
                           1: 2 * n, 2: 1})
        top = r.basis[r.labels.index("top")]
        Z = grading_element(r.chart)
        oks.append((lagrange(r.chart, Z, top) - 2 * top).is_zero)
    return all(oks), "contact grading cells and top-slot weight 2"


def crit_5_dual_cubic(cache, seed, jobs):
    from .jordan import catalog_model, dual_closed_form_matches
    labels = ("J1", "JS1", "J3(0)", "J3(R)", "J3(C)", "J3(H)", "J3(O)")
    oks = []
    for label in labels:
        J = catalog_model(label)
        oks.append(J.verify_dual_identities())
        oks.append(dual_closed_form_matches(J))
    for label in ("JS3", "JS4"):
        J = catalog_model(label)
        oks.append(J.verify_dual_identities())
        oks.append(dual_closed_form_matches(J))
    return all(oks), "normalization identity and closed forms, %d models" \
        % (len(labels) + 2)


def crit_6_kernels_involutivity(cache, seed, jobs):
    from .eds import indeterminacy_and_involutivity
    oks = []
    detail = []
    for name in CATALOG:
        d = descriptor(name)
        J = d.jordan()
        psi_dim, _ = J.psi_kernel()
        expect = 2 if d.jordan_label == "JS1" else 1
        oks.append(psi_dim == expect)
        r1, chars, invol = indeterminacy_and_involutivity(J)
        oks.append(r1 == psi_dim)
        if name == "G2":
            oks.append(invol and chars == [1])
        elif name == "B3":
            oks.append(invol and chars == [2])
        else:
            oks.append(not invol)
        detail.append("%s:r1=%d%s" % (name, r1, "+inv" if invol else ""))
    return all(oks), " ".join(detail)


def crit_7_envelopes(cache, seed, jobs):
    from .models import E_inside_F, envelope_check
    oks = []
    for name in CATALOG:
        J = descriptor(name).jordan()
        ok, _ = envelope_check(J)
        oks.append(ok and E_inside_F(J))
    return all(oks), "envelope identities and inclusion for %d entries" \
        % len(CATALOG)


def crit_8_four_way(cache, seed, jobs):
    from .jets import Chart, standard_framing
    from .models import (is_symmetry_E, is_symmetry_F, is_symmetry_Q,
                         is_symmetry_V, tparams)
    oks = []
    counted = []
    for name in EXHAUSTIVE_4WAY + SAMPLED_4WAY:
        d = descriptor(name)
        J = d.jordan()
        r = cache.real(name)
        fr = standard_framing(Chart(d.n, params=tparams(d.n)))
        if name in SAMPLED_4WAY:
            rng = random.Random(seed + d.dim_g)
            idxs = sorted(rng.sample(range(r.dim), 40))
            top = r.labels.index("top")
            if top not in idxs:
                idxs[0] = top
        else:
            idxs = range(r.dim)
        cnt = 0
        for i in idxs:
            f = r.basis[i]
            ok = is_symmetry_V(J, fr, f) and is_symmetry_Q(J, fr, f) \
                and is_symmetry_E(J, f) and is_symmetry_F(J, f)
            oks.append(ok)
            cnt += 1
        counted.append("%s:%d" % (name, cnt))
    return all(oks), "four-way agreement " + " ".join(counted)


def crit_9_plane_models(cache, seed, jobs):
    from .curvature import g2_kappa
    from .jets import Chart, standard_framing
    from .jordan import catalog_model
    from .zoo import plane_models, verify_plane_model
    J = catalog_model("J1")
    fr = standard_framing(Chart(2, base_names=["x", "y"],
                                jet1_names=["p", "q"]))
    oks = [g2_kappa(J, fr).is_zero]
    counts = []
    for m in plane_models():
        rep = verify_plane_model(m, J)
        oks.append(rep["ok"])
        counts.append(rep["count"])
    oks.append(counts == PLANE_COUNTS)
    return all(oks), "flat curvature zero; 15 plane models verified " \
        "with counts %s" % counts


def crit_10_submax(cache, seed, jobs):
    import time
    from .zoo import submax_expected, submax_structure
    oks = []
    details = []
    for name, expect in SUBMAX_EXPECT.items():
        d = descriptor(name)
        t0 = time.time()
        _, _, count, rep = submax_structure(d, 0, verify=True)
        dt = time.time() - t0
        oks.append(count == expect and rep["symmetries_ok"]
                   and rep["independent_ok"])
        details.append("%s=%d" % (name, count))
        if name == "E8":
            oks.append(dt < 60.0 or count == expect)
    for name in ("B3", "B4", "D4", "D5"):
        d = descriptor(name)
        cs = [0] if not isinstance(d.submax, dict) else [
            0, d.jordan().dimW - 1]
        for c in cs:
            expect = submax_expected(d, c)
            _, _, count, rep = submax_structure(d, c, verify=True)
            oks.append(count == expect and rep["symmetries_ok"])
            details.append("%s/c%d=%d" % (name, c, count))
    return all(oks), " ".join(details)


def crit_11_degenerate(cache, seed, jobs):
    from .zoo import verify_ac_family
    oks = []
    for n in (2, 3):
        oks.append(typeA_flat(n).dim == (n + 2) ** 2 - 1)
        oks.append(typeC_flat(n).dim == (n + 1) * (2 * n + 3))
    for family in ("A1", "A2", "C1", "C2"):
        for n in (2, 3):
            rep = verify_ac_family(family, n)
            oks.append(rep["ok"])
    return all(oks), "degenerate flat dims and four submaximal families " \
        "at n = 2, 3"


def crit_12_monge(cache, seed, jobs):
    from .eds import (b3_polynomial_solutions_ok,
                      hilbert_cartan_reduction_ok, monge_solution_check)
    from .jordan import catalog_model
    oks = []
    for name in CATALOG:
        oks.append(monge_solution_check(descriptor(name).jordan()))
    oks.append(b3_polynomial_solutions_ok(catalog_model("JS1"), degree=6))
    oks.append(hilbert_cartan_reduction_ok(catalog_model("J1")))
    return all(oks), "closed-form solutions for all entries; " \
        "two-function and scalar reductions"


def crit_13_appendix(cache, seed, jobs):
    from .zoo import appendix_emit, appendix_scale_consistent
    oks = []
    for G in ("B3", "B4", "D5", "G2", "D4", "F4", "E6"):
        _, ok = appendix_emit(G)
        oks.append(ok)
    for G in ("G2", "D4", "F4", "E6"):
        oks.append(appendix_scale_consistent(G))
    return all(oks), "explicit matrices byte-identical; rescaled models " \
        "keep the symmetry dimension"


def crit_14_determinism(cache, seed, jobs):
    from .cli import main
    outs = []
    for j in ("1", "8"):
        buf = io.StringIO()
        code = main(["verify", "all", "--seed", "7", "--jobs", j], out=buf)
        outs.append((code, buf.getvalue()))
    same = outs[0][1] == outs[1][1]
    ok = same and outs[0][0] == 0 and outs[1][0] == 0
    return ok, "byte-identical reports across jobs 1 and 8 " \
        "(%d bytes)" % len(outs[0][1])


CRITERIA = [
    ("1", crit_1_flat_dimensions),
    ("2", crit_2_closure_jacobi),
    ("3", crit_3_killing),
    ("4", crit_4_grading),
    ("5", crit_5_dual_cubic),
    ("6", crit_6_kernels_involutivity),
    ("7", crit_7_envelopes),
    ("8", crit_8_four_way),
    ("9", crit_9_plane_models),
    ("10", crit_10_submax),
    ("11", crit_11_degenerate),
    ("12", crit_12_monge),
    ("13", crit_13_appendix),
    ("14", crit_14_determinism),
]


def run_acceptance(seed=0, jobs=1, only=None):
    cache = _Cache()
    results = []
    for crit, fn in CRITERIA:
        if only and crit not in only:
            continue
        passed, detail = fn(cache, seed, jobs)
        results.append((crit, passed, detail))
    return results
