"""Command-line entry point.

forge build <G>                     construct and summarize a realization
forge emit <kind> <G> [--format]    print a model (E, F, Q, V, appendix,
                                    monge, generators)
forge verify <suite> [<G>] [...]    run verification suites, JSON/text
forge acceptance                    run the acceptance criteria

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .realize import CATALOG, descriptor
from .reports import SUITES, render_report, run_suite

EMIT_KINDS = ("E", "F", "Q", "V", "appendix", "monge", "generators")


def make_parser():
    p = argparse.ArgumentParser(
        prog="forge",
        description="exact models and verification for parabolic contact "
                    "structures")
    sub = p.add_subparsers(dest="command")

    b = sub.add_parser("build", help="construct a flat realization")
    b.add_argument("lie_type")

    e = sub.add_parser("emit", help="emit a model")
    e.add_argument("kind", choices=EMIT_KINDS)
    e.add_argument("lie_type")
    e.add_argument("--format", choices=("txt", "json", "latex"),
                   default="txt")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=tuple(sorted(SUITES)) + ("all",))
    v.add_argument("lie_type", nargs="?", default=None)
    v.add_argument("--exhaustive", action="store_true")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int,
                   default=int(os.environ.get("FORGE_JOBS", "1")))
    v.add_argument("--format", choices=("txt", "json"), default="json")

    a = sub.add_parser("acceptance", help="run the acceptance criteria")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--jobs", type=int,
                   default=int(os.environ.get("FORGE_JOBS", "1")))
    return p


def _descriptor_or_exit(name, out):
    try:
        return descriptor(name)
    except ValueError as exc:
        out.write(json.dumps({"error": str(exc)}) + "\n")
        return None


def cmd_build(args, out):
    d = _descriptor_or_exit(args.lie_type, out)
    if d is None:
        return 2
    from .realize import flat_generators
    try:
        real = flat_generators(d)
        grading = real.grading_report()
    except (ValueError, AssertionError) as exc:
        out.write(json.dumps({"lie_type": d.name, "error": str(exc)},
                             sort_keys=True) + "\n")
        return 1
    out.write("lie type %s: dim g = %d\n" % (d.name, real.dim))
    out.write("grading: %s\n"
              % " ".join("g[%d]=%d" % (k, v) for k, v in grading.items()))
    out.write("jordan model %s (dim W = %d, n = %d)\n"
              % (d.jordan_label, d.jordan().dimW, d.n))
    return 0


def _plane_names(sys_or_poly):
    return sys_or_poly


def cmd_emit(args, out):
    d = _descriptor_or_exit(args.lie_type, out)
    if d is None:
        return 2
    from .models import emit_E, emit_F, emit_Q, emit_V, tparams
    from .jets import Chart, standard_framing
    from .emit import poly_latex
    J = d.jordan()
    kind, fmt = args.kind, args.format
    if kind in ("E", "F"):
        sys = emit_E(J) if kind == "E" else emit_F(J)
        if d.n == 2 and kind == "E":
            # eliminate the parameter through the last equation u_yy = t
            from .rings import PARAMETER
            table = sys.chart.table.extend([("uyy", PARAMETER)])
            subs = {"t1": table.var("uyy")}
            e00 = sys.equations[(0, 0)].lift(table).substitute(subs)
            e01 = sys.equations[(0, 1)].lift(table).substitute(subs)
            if fmt == "latex":
                out.write("u_{xx} = %s , \\quad u_{xy} = %s\n"
                          % (poly_latex(e00), poly_latex(e01)))
            elif fmt == "json":
                out.write(json.dumps({
                    "type": "plane-pair", "n": 2,
                    "equations": [{"lhs": "u_xx", "rhs": str(e00)},
                                  {"lhs": "u_xy", "rhs": str(e01)}],
                    "parameters": []}, indent=1, sort_keys=True) + "\n")
            else:
                out.write("u_xx = %s\nu_xy = %s\n" % (e00, e01))
            return 0
        if fmt == "json":
            out.write(json.dumps(sys.to_json_dict(), indent=1,
                                 sort_keys=True) + "\n")
        elif fmt == "latex":
            out.write(sys.to_latex() + "\n")
        else:
            for key in sorted(sys.equations):
                out.write("%s = %s\n" % (sys.chart.jet2[key],
                                         sys.equations[key]))
        return 0
    if kind == "Q":
        Q = emit_Q(J)
        if fmt == "latex":
            out.write(poly_latex(Q) + "\n")
        elif fmt == "json":
            out.write(json.dumps({"type": "quartic", "n": d.n,
                                  "equations": [{"lhs": str(Q), "rhs": "0"}],
                                  "parameters": []},
                                 indent=1, sort_keys=True) + "\n")
        else:
            out.write(str(Q) + "\n")
        return 0
    if kind == "V":
        chart = Chart(d.n, params=tparams(d.n) + ("lam",))
        fr = standard_framing(chart)
        V = emit_V(J, fr, with_lambda=True)
        if fmt == "json":
            out.write(json.dumps(
                {"type": "cone-field", "n": d.n,
                 "components": {k: str(v) for k, v in V.comps.items()}},
                indent=1, sort_keys=True) + "\n")
        else:
            out.write(str(V) + "\n")
        return 0
    if kind == "appendix":
        from .zoo import appendix_emit
        try:
            rows, ok = appendix_emit(d.name)
        except ValueError as exc:
            out.write(json.dumps({"error": str(exc)}) + "\n")
            return 2
        if fmt == "json":
            out.write(json.dumps({"matrix": rows, "match": ok},
                                 indent=1, sort_keys=True) + "\n")
        else:
            for row in rows:
                out.write("[ " + " | ".join(row) + " ]\n")
            out.write("matches the recorded display: %s\n" % ok)
        return 0 if ok else 1
    if kind == "monge":
        from .eds import MongeSystem, b3_monge_equations, \
            hilbert_cartan_reduction_ok
        ms = MongeSystem(J)
        for line in ms.equations_text():
            out.write(line + "\n")
        if d.name == "G2":
            out.write("eliminated form: Z' = 1/2*(U'')^2 (%s)\n"
                      % hilbert_cartan_reduction_ok(J))
        if d.jordan_label == "JS1":
            ok, _ = b3_monge_equations(J)
            out.write("eliminated form: Z_x = U_xx*U_xy, "
                      "Z_y = 1/2*U_xy^2, U_yy = 0 (%s)\n" % ok)
        return 0
    if kind == "generators":
        from .realize import flat_generators
        real = flat_generators(d)
        if fmt == "json":
            out.write(real.to_json() + "\n")
        elif fmt == "latex":
            out.write(real.to_latex() + "\n")
        else:
            for lab, g, b in zip(real.labels, real.grades, real.basis):
                out.write("%-12s grade %+d: %s\n" % (lab, g, b))
        return 0
    return 2


def cmd_verify(args, out):
    types = None
    if args.lie_type:
        if args.lie_type not in CATALOG and not (
                args.lie_type[0] in "BD" and args.lie_type[1:].isdigit()):
            out.write(json.dumps({"error": "unknown type %r"
                                  % args.lie_type}) + "\n")
            return 2
        types = (args.lie_type,)
    if args.suite == "jordan" and types:
        types = (descriptor(types[0]).jordan_label,)
    checks = run_suite(args.suite, exhaustive=args.exhaustive,
                       seed=args.seed, jobs=max(1, args.jobs), types=types)
    out.write(render_report(args.suite, args.seed, checks, fmt=args.format))
    return 0 if all(c.passed for c in checks) else 1


def cmd_acceptance(args, out):
    from .acceptance import run_acceptance
    results = run_acceptance(seed=args.seed, jobs=max(1, args.jobs))
    ok = True
    for crit, passed, detail in results:
        ok = ok and passed
        out.write("criterion %-2s %s  %s\n"
                  % (crit, "pass" if passed else "FAIL", detail))
    out.write("acceptance: %s\n" % ("all criteria pass" if ok else "FAILURE"))
    return 0 if ok else 1


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command == "build":
        return cmd_build(args, out)
    if args.command == "emit":
        return cmd_emit(args, out)
    if args.command == "verify":
        return cmd_verify(args, out)
    if args.command == "acceptance":
        return cmd_acceptance(args, out)
    parser.print_usage(out)
    return 2


if __name__ == "__main__":
    sys.exit(main())
