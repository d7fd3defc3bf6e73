"""Verification suites and deterministic reports.

Each suite produces a list of checks (name, citation key, expected, got,
pass); reports serialize byte-stably with sorted checks, so the output is
independent of the evaluation order and of the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor

from .realize import CATALOG, descriptor


class Check:
    __slots__ = ("name", "cite", "expected", "got", "passed")

    def __init__(self, name, cite, expected, got, passed=None):
        self.name = name
        self.cite = cite
        self.expected = str(expected)
        self.got = str(got)
        self.passed = (self.expected == self.got) if passed is None \
            else bool(passed)

    def to_dict(self):
        return {"name": self.name, "cite": self.cite,
                "expected": self.expected, "got": self.got,
                "pass": self.passed}


def run_parallel(tasks, jobs=1):
    """Evaluate callables (each returning a list of Check) and merge.

    Results are sorted by check name, so the report does not depend on
    the degree of parallelism.
    """
    checks = []
    if jobs <= 1:
        for t in tasks:
            checks.extend(t())
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for result in pool.map(lambda t: t(), tasks):
                checks.extend(result)
    checks.sort(key=lambda c: c.name)
    return checks


def render_report(suite, seed, checks, fmt="json"):
    if fmt == "json":
        data = {"suite": suite, "seed": seed,
                "checks": [c.to_dict() for c in checks]}
        return json.dumps(data, indent=1, sort_keys=True) + "\n"
    lines = ["suite: %s (seed %d)" % (suite, seed)]
    width = max((len(c.name) for c in checks), default=10)
    for c in checks:
        status = "pass" if c.passed else "FAIL"
        lines.append("%-*s  [%s]  expected %s  got %s  (%s)"
                     % (width, c.name, status, c.expected, c.got, c.cite))
    npass = sum(1 for c in checks if c.passed)
    lines.append("%d/%d checks passed" % (npass, len(checks)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

JORDAN_LABELS = ("J1", "JS1", "JS3", "JS4", "J3(0)", "J3(R)", "J3(C)",
                 "J3(H)", "J3(O)")
FAST_TYPES = ("G2", "B3", "B4", "D4", "D5", "F4")
ALL_TYPES = CATALOG
SEED_TYPES = ("G2", "B3", "D4", "F4")

PSI_KERNEL_EXPECTED = {"JS1": 2}


def suite_jordan(exhaustive=False, seed=0, types=None):
    from .jordan import build_jordan, dual_closed_form_matches
    labels = types or JORDAN_LABELS
    tasks = []

    def one(label):
        from .jordan import catalog_model
        out = []
        J = catalog_model(label)
        out.append(Check("jordan/%s/dual-identity" % label,
                         "dual-cubic-normalization", True,
                         J.verify_dual_identities()))
        out.append(Check("jordan/%s/dual-closed-form" % label,
                         "dual-cubic-table", True,
                         dual_closed_form_matches(J)))
        out.append(Check("jordan/%s/injectivity" % label,
                         "cubic-map-injective", J.dimW,
                         J.injectivity_rank()))
        dim, _ = J.psi_kernel()
        out.append(Check("jordan/%s/psi-kernel" % label, "skew-cubic-kernel",
                         PSI_KERNEL_EXPECTED.get(label, 1), dim))
        out.append(Check("jordan/%s/rescale" % label, "dual-rescaling", True,
                         J.rescale(5).verify_dual_identities()))
        return out

    for label in labels:
        tasks.append(lambda lab=label: one(lab))
    return tasks


def suite_closure(exhaustive=False, seed=0, types=None):
    from .realize import close_under_bracket, flat_chart, flat_generators, \
        top_slot
    names = types or (ALL_TYPES if exhaustive else FAST_TYPES)

    def one(name):
        out = []
        d = descriptor(name)
        real = flat_generators(d)
        out.append(Check("closure/%s/dim" % name, "flat-symmetry-dimension",
                         d.dim_g, real.dim))
        if d.dim_oracle is not None:
            out.append(Check("closure/%s/dim-oracle" % name,
                             "classical-root-count", d.dim_oracle, real.dim))
        real.structure_constants()
        out.append(Check("closure/%s/bracket-closure" % name,
                         "generators-close", True, True))
        out.append(Check("closure/%s/jacobi-sc" % name,
                         "structure-constant-jacobi", True,
                         real.jacobi_structure_constants()))
        sample = None if real.dim <= 52 else 200
        out.append(Check("closure/%s/jacobi-poly" % name,
                         "polynomial-jacobi", True,
                         real.jacobi_polynomial(sample=sample, seed=seed)))
        out.append(Check("closure/%s/killing-rank" % name,
                         "killing-nondegenerate", real.dim,
                         real.killing_rank()))
        grading = real.grading_report()
        n = d.n
        expect = {-2: 1, -1: 2 * n, 0: real.dim - 4 * n - 2, 1: 2 * n, 2: 1}
        out.append(Check("closure/%s/grading" % name, "contact-grading",
                         expect, grading))
        if name in SEED_TYPES:
            J = d.jordan()
            chart = flat_chart(d)
            seeds = [chart.x(i) for i in range(n)] + \
                [chart.du(i) for i in range(n)] + [top_slot(J, chart)]
            span = close_under_bracket(chart, seeds)
            ok = len(span) == d.dim_g and all(real.contains(f) for f in span)
            out.append(Check("closure/%s/seed-generation" % name,
                             "three-seed-generation", True, ok))
        return out

    return [lambda nm=nm: one(nm) for nm in names]


def suite_envelope(exhaustive=False, seed=0, types=None):
    from .models import E_inside_F, envelope_check, quartic_vanishes_on_cone
    names = types or ALL_TYPES

    def one(name):
        d = descriptor(name)
        J = d.jordan()
        ok, fails = envelope_check(J)
        out = [Check("envelope/%s/goursat" % name, "envelope-reproduces",
                     True, ok)]
        out.append(Check("envelope/%s/E-in-F" % name, "tangent-lift-inside",
                         True, E_inside_F(J)))
        if d.n <= 10:
            out.append(Check("envelope/%s/quartic-on-cone" % name,
                             "quartic-tangential", True,
                             quartic_vanishes_on_cone(J)))
        return out

    return [lambda nm=nm: one(nm) for nm in names]


INVOL_EXPECTED = {"G2": (1, [1], True), "B3": (2, [2], True)}


def suite_eds(exhaustive=False, seed=0, types=None):
    from .eds import (MongeSystem, TangentLiftSystem, b3_monge_equations,
                      b3_polynomial_solutions_ok, hilbert_cartan_reduction_ok,
                      indeterminacy_and_involutivity, monge_solution_check)
    names = types or ALL_TYPES

    def one(name):
        d = descriptor(name)
        J = d.jordan()
        out = []
        r1, chars, invol = indeterminacy_and_involutivity(J)
        er1, echars, einv = INVOL_EXPECTED.get(
            name, (2 if d.jordan_label == "JS1" else 1, None, False))
        out.append(Check("eds/%s/indeterminacy" % name,
                         "degree-of-indeterminacy", er1, r1))
        psi_dim, _ = J.psi_kernel()
        out.append(Check("eds/%s/r1-matches-kernel" % name,
                         "indeterminacy-vs-kernel", psi_dim, r1))
        out.append(Check("eds/%s/involutive" % name, "cartan-test",
                         einv, invol))
        if echars is not None:
            out.append(Check("eds/%s/characters" % name, "cartan-characters",
                             echars, chars))
        out.append(Check("eds/%s/monge-solutions" % name,
                         "monge-closed-solutions", True,
                         monge_solution_check(J)))
        if d.n <= 7:
            tls = TangentLiftSystem(J)
            out.append(Check("eds/%s/derived-rank" % name, "derived-flag",
                             3 * d.n - 2, tls.derived_rank()))
            out.append(Check("eds/%s/cauchy" % name,
                             "cauchy-characteristic", True,
                             tls.cauchy_checks()
                             and tls.invariants_killed_by_cauchy()))
            ms = MongeSystem(J)
            out.append(Check("eds/%s/reduction" % name, "quotient-system",
                             True, ms.duality_ok() and
                             ms.bracket_identity_ok() and
                             ms.section_pullback_ok(tls)))
        if name == "G2":
            out.append(Check("eds/G2/hilbert-cartan", "reduced-scalar-form",
                             True, hilbert_cartan_reduction_ok(J)))
        if name == "B3":
            ok, _eqs = b3_monge_equations(J)
            out.append(Check("eds/B3/monge-shape", "rank2-monge-system",
                             True, ok))
            out.append(Check("eds/B3/function-solutions",
                             "two-function-solutions", True,
                             b3_polynomial_solutions_ok(J)))
        return out

    return [lambda nm=nm: one(nm) for nm in names]


def suite_curvature(exhaustive=False, seed=0, types=None):
    from .curvature import g2_kappa
    from .jets import Chart, standard_framing
    from .jordan import build_jordan
    from .zoo import plane_models, verify_plane_model

    def flat_check():
        J = build_jordan("J1").with_dual()
        fr = standard_framing(Chart(2, base_names=["x", "y"],
                                    jet1_names=["p", "q"]))
        return [Check("curvature/flat", "flat-has-zero-curvature", True,
                      g2_kappa(J, fr).is_zero)]

    def one(model):
        rep = verify_plane_model(model)
        return [Check("curvature/%s" % model.name, "homogeneous-plane-model",
                      {"root_type": model.expected_root_type,
                       "count": model.expected_count},
                      {"root_type": rep["root_type"], "count": rep["count"]},
                      passed=rep["ok"])]

    tasks = [flat_check]
    for m in plane_models():
        tasks.append(lambda mm=m: one(mm))
    return tasks


def suite_submax(exhaustive=False, seed=0, types=None):
    from .zoo import submax_expected, submax_structure, submax_pde
    names = types or ALL_TYPES

    def one(name):
        d = descriptor(name)
        out = []
        cs = [0]
        if isinstance(d.submax, dict):
            cs = [0, d.jordan().dimW - 1]
        verify = d.n <= 7 or exhaustive
        for c in cs:
            expected = submax_expected(d, c)
            framing, gens, count, rep = submax_structure(d, c, verify=verify)
            tag = "submax/%s/c%d" % (name, c)
            out.append(Check(tag + "/count", "deformed-count", expected,
                             count))
            out.append(Check(tag + "/below-flat", "submaximal-below-maximal",
                             True, count < d.dim_g))
            if verify:
                out.append(Check(tag + "/symmetries", "deformed-symmetries",
                                 True, rep["symmetries_ok"]
                                 and rep["independent_ok"]))
        if d.n <= 7:
            _, _, ok = submax_pde(d, 0)
            out.append(Check("submax/%s/pde-shape" % name,
                             "deformed-jet-system", True, ok))
        return out

    return [lambda nm=nm: one(nm) for nm in names]


def suite_ac(exhaustive=False, seed=0, types=None):
    from .realize import typeA_flat, typeC_flat
    from .zoo import verify_ac_family

    def flats():
        out = []
        for n in (2, 3):
            rA = typeA_flat(n)
            rA.structure_constants()
            out.append(Check("ac/A-flat-n%d/dim" % n, "typeA-flat-dimension",
                             (n + 2) ** 2 - 1, rA.dim))
            out.append(Check("ac/A-flat-n%d/killing" % n,
                             "typeA-flat-killing", rA.dim,
                             rA.killing_rank()))
            rC = typeC_flat(n)
            rC.structure_constants()
            out.append(Check("ac/C-flat-n%d/dim" % n, "typeC-flat-dimension",
                             (n + 1) * (2 * n + 3), rC.dim))
            out.append(Check("ac/C-flat-n%d/killing" % n,
                             "typeC-flat-killing", rC.dim,
                             rC.killing_rank()))
        return out

    def one(family, n):
        rep = verify_ac_family(family, n)
        return [Check("ac/%s-n%d" % (family, n), "degenerate-submaximal",
                      {"count": rep["expected"], "flags": True},
                      {"count": rep["count"],
                       "flags": rep["flags_ok"] and rep["symmetries_ok"]
                       and rep["closed"]},
                      passed=rep["ok"])]

    tasks = [flats]
    for family in ("A1", "A2", "C1", "C2"):
        for n in (2, 3):
            tasks.append(lambda f=family, nn=n: one(f, nn))
    return tasks


SUITES = {
    "jordan": suite_jordan,
    "closure": suite_closure,
    "envelope": suite_envelope,
    "eds": suite_eds,
    "curvature": suite_curvature,
    "submax": suite_submax,
    "ac": suite_ac,
}


def run_suite(suite, exhaustive=False, seed=0, jobs=1, types=None):
    if suite == "all":
        tasks = []
        for name in sorted(SUITES):
            tasks.extend(SUITES[name](exhaustive=exhaustive, seed=seed,
                                      types=types))
    else:
        tasks = SUITES[suite](exhaustive=exhaustive, seed=seed, types=types)
    return run_parallel(tasks, jobs=jobs)
