"""The four presentations of a parabolic contact structure and their
symmetry predicates.

From a Jordan model and a conformal-symplectic framing we emit: the cone
field V(lambda, t), its tangent-lift PDE system (one equation per second
derivative, parametrized by t), the single parabolic PDE obtained as a
first-order envelope, and the quartic cone Q.  Symmetry of a generating
function is decided against each presentation by exact polynomial
identities; all four predicates agree on the flat models.
"""

from __future__ import annotations

import itertools

from .jets import (Chart, VectorField, expand_in_framing, lift, mobius,
                   prolong, standard_framing)
from .linalg import nullspace
from .rings import PARAMETER, Poly, QQ0, QQ1, RatFunc, VarTable, as_ratfunc, qq


def tparams(n):
    return tuple("t%d" % a for a in range(1, n))


def flat_jet2_chart(n, params_extra=(), base_names=None, jet1_names=None):
    return Chart(n, order=2, base_names=base_names, jet1_names=jet1_names,
                 params=tparams(n) + tuple(params_extra))


class PDESystem:
    """Parametric or implicit second-order system on a jet chart.

    kind 'parametric-E': one value per (i <= j) for u_ij, functions of the
    chart and the parameters t^a.  kind 'parametric-F': values for u_00 and
    u_a0 only, with the u_ab block free.  kind 'implicit': a list of
    equations (Poly) that vanish on the locus.
    """

    def __init__(self, kind, chart, equations, framing=None):
        self.kind = kind
        self.chart = chart
        self.equations = equations
        self.framing = framing

    def substitution(self):
        """Bindings u_ij -> value for the parametric kinds."""
        n = self.chart.n
        if self.kind == "parametric-E":
            return {self.chart.jet2[key]: val
                    for key, val in self.equations.items()}
        if self.kind == "parametric-F":
            out = {self.chart.jet2[(0, 0)]: self.equations[(0, 0)]}
            for a in range(1, n):
                out[self.chart.jet2[(0, a)]] = self.equations[(0, a)]
            return out
        raise ValueError("no parametric substitution for %s" % self.kind)

    def to_json_dict(self):
        from .emit import value_str
        eqs = []
        if self.kind in ("parametric-E", "parametric-F"):
            for key in sorted(self.equations):
                i, j = key
                eqs.append({"lhs": self.chart.jet2[(i, j)],
                            "rhs": value_str(self.equations[key])})
        else:
            for e in self.equations:
                eqs.append({"lhs": value_str(e), "rhs": "0"})
        return {"type": self.kind, "n": self.chart.n, "equations": eqs,
                "parameters": list(self.chart.params)}

    def to_latex(self):
        from .emit import poly_latex
        lines = []
        if self.kind in ("parametric-E", "parametric-F"):
            for key in sorted(self.equations):
                i, j = key
                lines.append("u_{%d%d} = %s" % (i, j,
                                                poly_latex(self.equations[key])))
        else:
            for e in self.equations:
                lines.append("%s = 0" % poly_latex(e))
        return " , \\quad ".join(lines)


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _tvec(chart, n):
    return [chart.var("t%d" % a) for a in range(1, n)]


def emit_V(J, framing, with_lambda=True):
    """Cone field V(lambda, t) = l^3 X_0 - l^2 t^a X_a - C(t^3)/2 U^0
    - (3/2) l C_a(t^2) U^a on the framing's chart."""
    chart = framing.chart
    n = chart.n
    t = _tvec(chart, n)
    zero = chart.zero()
    lam = chart.var("lam") if with_lambda and "lam" in chart.table else None
    c3 = J.cubic(t, zero) if n > 1 else zero
    grad = J.grad(t, zero) if n > 1 else []
    if lam is None:
        out = framing.X[0]
        for a in range(1, n):
            out = out - framing.X[a].scale(t[a - 1])
        out = out - framing.U[0].scale(c3 / 2)
        for a in range(1, n):
            out = out - framing.U[a].scale(qq(3, 2) * grad[a - 1])
        return out
    out = framing.X[0].scale(lam ** 3)
    for a in range(1, n):
        out = out - framing.X[a].scale(lam ** 2 * t[a - 1])
    out = out - framing.U[0].scale(c3 / 2)
    for a in range(1, n):
        out = out - framing.U[a].scale(qq(3, 2) * lam * grad[a - 1])
    return out


def flat_E_values(J, chart):
    """The (u_ij) matrix: C(t^3), (3/2) C_b(t^2), 3 C_ab(t)."""
    n = chart.n
    t = _tvec(chart, n)
    zero = chart.zero()
    vals = {(0, 0): J.cubic(t, zero)}
    grad = J.grad(t, zero)
    hess = J.hess(t, zero)
    for a in range(1, n):
        vals[(0, a)] = qq(3, 2) * grad[a - 1]
    for a in range(1, n):
        for b in range(a, n):
            vals[(a, b)] = 3 * hess[a - 1][b - 1]
    return vals


def emit_E(J, framing=None, chart2=None):
    """Tangent-lift system: full (u_ij) block in framing fibre coordinates."""
    n = J.n
    if chart2 is None:
        chart2 = flat_jet2_chart(n)
    return PDESystem("parametric-E", chart2, flat_E_values(J, chart2),
                     framing=framing)


def emit_F(J, framing=None, chart2=None, extra=None):
    """Envelope system: u_00 and u_a0 in terms of the free u_ab block."""
    n = J.n
    if chart2 is None:
        chart2 = flat_jet2_chart(n)
    t = _tvec(chart2, n)
    zero = chart2.zero()
    c3 = J.cubic(t, zero)
    grad = J.grad(t, zero)
    u00 = -2 * c3
    for a in range(1, n):
        for b in range(1, n):
            u00 = u00 + t[a - 1] * t[b - 1] * chart2.d2u(a, b)
    if extra is not None:
        u00 = u00 + extra
    eqs = {(0, 0): u00}
    for a in range(1, n):
        val = -qq(3, 2) * grad[a - 1]
        for b in range(1, n):
            val = val + t[b - 1] * chart2.d2u(a, b)
        eqs[(0, a)] = val
    return PDESystem("parametric-F", chart2, eqs, framing=framing)


def goursat_family(J, chart2, extra=None):
    """G_t = u_00 - 2 t^a u_a0 + t^a t^b u_ab - C(t^3) (- extra)."""
    n = chart2.n
    t = _tvec(chart2, n)
    zero = chart2.zero()
    G = chart2.d2u(0, 0) - J.cubic(t, zero)
    for a in range(1, n):
        G = G - 2 * t[a - 1] * chart2.d2u(0, a)
        for b in range(1, n):
            G = G + t[a - 1] * t[b - 1] * chart2.d2u(a, b)
    if extra is not None:
        G = G - extra
    return G


def envelope_check(J):
    """First/second-order envelopes reproduce the two parametric systems.

    Solves {G_t = 0, dG_t/dt = 0} linearly for (u_00, u_a0) and compares
    with the envelope system; adding d2G/dt2 = 0 forces the tangent-lift
    values.  Returns (ok, failure list).
    """
    n = J.n
    chart2 = flat_jet2_chart(n)
    G = goursat_family(J, chart2)
    fails = []
    # first-order envelope: dG/dt^a = 0 is linear in u_{0a}
    F = emit_F(J, chart2=chart2)
    solved = {}
    for a in range(1, n):
        dG = G.derive("t%d" % a)
        # dG = -2 u_{0a} + linear rest
        coeff = dG.derive(chart2.jet2[(0, a)])
        if not (coeff + 2).is_zero:
            fails.append(("envelope-linearity", a))
            continue
        rest = dG.substitute({chart2.jet2[(0, a)]: chart2.zero()})
        solved[(0, a)] = rest / 2
        if not (rest / 2 - F.equations[(0, a)]).is_zero:
            fails.append(("first-order", a))
    G0 = G.substitute({chart2.jet2[(0, a)]: solved[(0, a)]
                       for a in range(1, n)})
    coeff = G0.derive(chart2.jet2[(0, 0)])
    if not (coeff - 1).is_zero:
        fails.append(("envelope-linearity", 0))
    else:
        rest = G0.substitute({chart2.jet2[(0, 0)]: chart2.zero()})
        if not (-rest - F.equations[(0, 0)]).is_zero:
            fails.append(("first-order", 0))
    # second order: d2G/dt^a dt^b = 2 u_ab - 6 C_ab(t)
    E = emit_E(J, chart2=chart2)
    hess_vals = {}
    for a in range(1, n):
        for b in range(a, n):
            d2 = G.derive("t%d" % a).derive("t%d" % b)
            expect = 2 * chart2.d2u(a, b) - 6 * J.hess(
                _tvec(chart2, n), chart2.zero())[a - 1][b - 1]
            if not (d2 - expect).is_zero:
                fails.append(("second-order-hess", (a, b)))
            hess_vals[chart2.jet2[(a, b)]] = E.equations[(a, b)]
    # substituting the solved u_ab into the first-order solution gives E
    for a in range(1, n):
        v = solved[(0, a)].substitute(hess_vals)
        if not (v - E.equations[(0, a)]).is_zero:
            fails.append(("envelope-E", (0, a)))
    v00 = (-G0.substitute({chart2.jet2[(0, 0)]: chart2.zero()})).substitute(
        hess_vals)
    if not (v00 - E.equations[(0, 0)]).is_zero:
        fails.append(("envelope-E", (0, 0)))
    return (not fails), fails


def E_inside_F(J):
    """Substituting the tangent-lift values into the envelope system."""
    n = J.n
    chart2 = flat_jet2_chart(n)
    E = emit_E(J, chart2=chart2)
    F = emit_F(J, chart2=chart2)
    binds = {chart2.jet2[key]: val for key, val in E.equations.items()}
    for key, val in F.equations.items():
        lhs = E.equations[key if key in E.equations else (key[1], key[0])]
        if not (val.substitute(binds) - lhs).is_zero:
            return False
    return True


# ---------------------------------------------------------------------------
# the quartic
# ---------------------------------------------------------------------------


def quartic_table(n):
    names = ["a%d" % i for i in range(n)] + ["b%d" % i for i in range(n)]
    return VarTable([(nm, PARAMETER) for nm in names])


def emit_Q(J, table=None):
    """(omega^i theta_i)^2 + 2 theta_0 C - 2 omega^0 C* - 9 C_a (C*)^a
    as a polynomial in formal coframe values a^i = omega^i(Y),
    b_i = theta_i(Y)."""
    n = J.n
    T = table if table is not None else quartic_table(n)
    a = [T.var("a%d" % i) for i in range(n)]
    b = [T.var("b%d" % i) for i in range(n)]
    zero = T.zero()
    pair = sum((a[i] * b[i] for i in range(n)), zero)
    Q = pair * pair
    if n > 1:
        aw = a[1:]
        bw = b[1:]
        Q = Q + 2 * b[0] * J.cubic(aw, zero)
        Q = Q - 2 * a[0] * J.dual(bw, zero)
        ga = J.grad(aw, zero)
        gb = J.dual_grad(bw, zero)
        Q = Q - 9 * sum((ga[i] * gb[i] for i in range(n - 1)), zero)
    return Q


def quartic_vanishes_on_cone(J):
    """Q(V) = 0 and Q on the affine tangent spaces of the cone, exactly."""
    n = J.n
    names = ["lam"] + ["t%d" % a for a in range(1, n)] + \
        ["mu%d" % a for a in range(1, n)] + ["nu"]
    T = quartic_table(n).extend([(nm, PARAMETER) for nm in names])
    Q = emit_Q(J).lift(T)
    lam = T.var("lam")
    t = [T.var("t%d" % a) for a in range(1, n)]
    zero = T.zero()
    c3 = J.cubic(t, zero)
    grad = J.grad(t, zero)
    comp = {"a0": lam ** 3, "b0": -c3 / 2}
    for a in range(1, n):
        comp["a%d" % a] = -lam ** 2 * t[a - 1]
        comp["b%d" % a] = -qq(3, 2) * lam * grad[a - 1]
    if not Q.substitute(comp).is_zero:
        return False
    # generic affine tangent vector: V + nu dV/dlam + mu^a dV/dt^a
    pert = dict(comp)
    nu = T.var("nu")
    for key in list(pert):
        val = pert[key]
        dval = val.derive("lam") * nu
        for a in range(1, n):
            dval = dval + val.derive("t%d" % a) * T.var("mu%d" % a)
        pert[key] = val + dval
    return Q.substitute(pert).is_zero


# ---------------------------------------------------------------------------
# symmetry predicates
# ---------------------------------------------------------------------------


def _v_chart(framing):
    chart = framing.chart
    if any("t%d" % a not in chart.table for a in range(1, chart.n)):
        chart = chart.with_params(*[nm for nm in tparams(chart.n)
                                    if nm not in chart.table])
        framing = framing.on_chart(chart)
    return framing


def is_symmetry_V(J, framing, f, return_residuals=False):
    """Tangency of [S_f, V(1, t)] to the cone, as identities in t.

    Expands the bracket in the framing and imposes mu_j = rho^i p_ij(t)
    with p the tangent-lift values, plus the lambda = 0 branch (the
    bracket with U^0 has no X-components).
    """
    framing = _v_chart(framing)
    chart = framing.chart
    n = chart.n
    f = chart.import_poly(f)
    S = lift(chart, f)
    V = emit_V(J, framing, with_lambda=False)
    K = S.bracket(V)
    rho, mu, tau = expand_in_framing(framing, K)
    if not (tau.is_zero if not isinstance(tau, RatFunc) else tau.is_zero):
        if return_residuals:
            return False, {"transversal": tau}
        return False
    t = _tvec(chart, n)
    zero = chart.zero()
    p00 = J.cubic(t, zero)
    grad = J.grad(t, zero)
    hess = J.hess(t, zero)
    residuals = {}
    r = mu[0] - rho[0] * p00
    for a in range(1, n):
        r = r - rho[a] * qq(3, 2) * grad[a - 1]
    if not r.is_zero:
        residuals["mu0"] = r
    for b in range(1, n):
        r = mu[b] - rho[0] * qq(3, 2) * grad[b - 1]
        for a in range(1, n):
            r = r - rho[a] * 3 * hess[a - 1][b - 1]
        if not r.is_zero:
            residuals["mu%d" % b] = r
    # lambda = 0 branch: [S, U^0] must have no X-components
    K0 = S.bracket(framing.U[0])
    rho0, mu0, tau0 = expand_in_framing(framing, K0)
    if not tau0.is_zero:
        residuals["transversal0"] = tau0
    for i in range(n):
        if not rho0[i].is_zero:
            residuals["rho0_%d" % i] = rho0[i]
    ok = not residuals
    if return_residuals:
        return ok, residuals
    return ok


def is_symmetry_Q(J, framing, f):
    """L_S Q = mu Q on the contact distribution, by exact divisibility."""
    chart = framing.chart
    n = chart.n
    names = ["a%d" % i for i in range(n)] + ["b%d" % i for i in range(n)]
    ext = chart.with_params(*[nm for nm in names if nm not in chart.table])
    framing = framing.on_chart(ext)
    f = ext.import_poly(f)
    S = lift(ext, f)
    Q = emit_Q(J, table=None)
    Q = Q.map_to(ext.table, {nm: ext.var(nm) for nm in names})
    a = [ext.var("a%d" % i) for i in range(n)]
    b = [ext.var("b%d" % i) for i in range(n)]
    Y = VectorField(ext, {})
    for i in range(n):
        Y = Y + framing.X[i].scale(a[i]) + framing.U[i].scale(b[i])
    K = S.bracket(Y)
    alpha, beta, tau = expand_in_framing(framing, K)
    if not tau.is_zero:
        return False
    R = None
    for i in range(n):
        for coef, var in ((alpha[i], "a%d" % i), (beta[i], "b%d" % i)):
            if coef.is_zero:
                continue
            term = coef * Q.derive(var)
            R = term if R is None else R + term
    if R is None:
        return True
    R = -R if not isinstance(R, RatFunc) else -R
    # Q has unit coefficient on (a0 b0)^2; extract mu and divide exactly
    probe = {"a%d" % i: (1 if i == 0 else 0) for i in range(n)}
    probe.update({"b%d" % i: (1 if i == 0 else 0) for i in range(n)})
    mu = _coeff_at(R, ext, probe_vars=("a0", "b0"))
    diff = R - Q * mu if not isinstance(R, RatFunc) else R - as_ratfunc(Q) * mu
    return diff.is_zero


def _coeff_at(R, ext, probe_vars):
    """Coefficient of a0^2 b0^2 in a quartic in the fiber variables."""
    poly = R if isinstance(R, Poly) else None
    if poly is None:
        num = R.num
        den = R.den
        c = _coeff_at(num, ext, probe_vars)
        return RatFunc(c, den)
    out = poly
    for v in probe_vars:
        out = out.coeff_of(v, 2)
    # remaining fiber variables must not occur in this coefficient
    return out


class _TangencyEngine:
    """Prolonged-tangency conditions evaluated on the first-jet chart.

    The second-order action is never assembled: the conormal conditions
    only involve the directional contractions of the first-jet data along
    l = (1, -t^a) and the locus totals D_i restricted to the system, on
    which the jet contraction l^j u_jk takes the cone values
    (-C(t^3)/2, -(3/2) C_a(t^2)).
    """

    def __init__(self, J, f, extra=None, chart=None):
        from .jets import lift
        n = J.n
        if chart is None:
            chart = Chart(n, order=1, params=tparams(n))
        self.J = J
        self.chart = chart
        self.n = n
        f = chart.import_poly(f)
        self.S1 = lift(chart, f)
        zero = chart.zero()
        self.t = _tvec(chart, n)
        c3 = J.cubic(self.t, zero)
        grad = J.grad(self.t, zero)
        hess = J.hess(self.t, zero)
        self.mvals = {(0, 0): c3}
        for a in range(1, n):
            self.mvals[(0, a)] = qq(3, 2) * grad[a - 1]
            self.mvals[(a, 0)] = self.mvals[(0, a)]
            for b in range(1, n):
                self.mvals[(a, b)] = 3 * hess[a - 1][b - 1]
        self.vcone = [-c3 / 2] + [-qq(3, 2) * g for g in grad]
        self.lvec = [chart.one()] + [-ti for ti in self.t]
        self.xi = [self.S1.coeff(chart.base_names[k]) for k in range(n)]
        self.phi = [self.S1.coeff(chart.jet1_names[j]) for j in range(n)]
        self.extra = chart.import_poly(extra) if extra is not None else None

    def D_locus(self, i, h):
        """D_i with u_ik replaced by the tangent-lift values."""
        chart = self.chart
        out = h.derive(chart.base_names[i]) + chart.du(i) * h.derive("u")
        for k in range(self.n):
            d = h.derive(chart.jet1_names[k])
            if not d.is_zero:
                out = out + self.mvals[(i, k)] * d
        return out

    def D_cone(self, h):
        """l^i D_i with the contraction l^j u_jk at its cone values."""
        chart = self.chart
        out = None
        for i in range(self.n):
            piece = h.derive(chart.base_names[i])
            if not piece.is_zero:
                piece = self.lvec[i] * piece
                out = piece if out is None else out + piece
        du = h.derive("u")
        if not du.is_zero:
            lu = sum((self.lvec[i] * chart.du(i) for i in range(self.n)),
                     chart.zero())
            out = lu * du if out is None else out + lu * du
        for k in range(self.n):
            d = h.derive(chart.jet1_names[k])
            if not d.is_zero:
                piece = self.vcone[k] * d
                out = piece if out is None else out + piece
        return chart.zero() if out is None else out

    def base_condition(self):
        """S2(G) restricted to the locus, as a first-jet polynomial."""
        chart = self.chart
        phi_l = sum((self.lvec[j] * self.phi[j] for j in range(self.n)),
                    chart.zero())
        out = self.D_cone(phi_l)
        for k in range(self.n):
            if self.xi[k].is_zero:
                continue
            bk = self.D_cone(self.xi[k])
            if not bk.is_zero:
                out = out - self.vcone[k] * bk
        if self.extra is not None:
            out = out - self.S1.apply(self.extra)
        return out

    def gradient_conditions(self):
        """S2(dG/dt^a) on the tangent-lift locus, for each a."""
        out = []
        for a in range(1, self.n):
            expr = self.D_cone(self.phi[a])
            for k in range(self.n):
                if self.xi[k].is_zero:
                    continue
                bk = self.D_cone(self.xi[k])
                if not bk.is_zero:
                    expr = expr - self.mvals[(a, k)] * bk
            out.append(expr)
        return out

    def second_jet_block(self):
        """Phi_ab = (second-order coefficient on u_ab) on the locus."""
        dxi = {}
        out = {}
        for a in range(1, self.n):
            for b in range(a, self.n):
                val = self.D_locus(a, self.phi[b])
                for k in range(self.n):
                    if self.xi[k].is_zero:
                        continue
                    dk = dxi.get((a, k))
                    if dk is None:
                        dk = self.D_locus(a, self.xi[k])
                        dxi[(a, k)] = dk
                    if not dk.is_zero:
                        val = val - self.mvals[(b, k)] * dk
                out[(a, b)] = val
        return out


def _cubic_left_inverse(J):
    """Rational rows expressing s^c from the pair values of C_ab(s)."""
    from .jordan import tensor_get
    from .linalg import solve_unique
    N = J.dimW
    pairs = list(itertools.combinations_with_replacement(range(1, N + 1), 2))
    rows = [{c: tensor_get(J.C, a - 1, b - 1, c) for c in range(N)
             if tensor_get(J.C, a - 1, b - 1, c)} for (a, b) in pairs]
    # pick an invertible row subset via elimination, then invert
    from .linalg import Echelon
    ech = Echelon()
    chosen = []
    for idx, r in enumerate(rows):
        if ech.insert(dict(r)):
            chosen.append(idx)
        if len(chosen) == N:
            break
    if len(chosen) != N:
        raise AssertionError("cubic map is not injective")
    inv_cols = []
    sub_rows = [rows[i] for i in chosen]
    for c in range(N):
        rhs = [QQ1 if k == c else QQ0 for k in range(N)]
        # solve M^T y = e_c ... we need s = L Phi with L M = id
        inv_cols.append(solve_unique(
            [{k: sub_rows[k].get(cc, QQ0) for k in range(N)
              if sub_rows[k].get(cc)} for cc in range(N)], rhs, N))
    # L[c][k] multiplies the chosen pair value k
    L = [[inv_cols[c][k] for k in range(N)] for c in range(N)]
    return pairs, chosen, L


def is_symmetry_E(J, f, extra=None, framing_chart=None):
    """Prolonged tangency to the tangent-lift system in standard jets.

    Conditions: S2(G) and S2(dG/dt^a) vanish on the locus, and the
    second-order block on the free directions lies in the span of the
    constant matrices C_abc (equivalently, all kernel contractions of
    d2G/dt^2 are preserved).
    """
    from .jordan import tensor_get
    eng = _TangencyEngine(J, f, extra=extra, chart=framing_chart)
    if not eng.base_condition().is_zero:
        return False
    for expr in eng.gradient_conditions():
        if not expr.is_zero:
            return False
    n = J.n
    if n == 1:
        return True
    block = eng.second_jet_block()
    pairs, chosen, L = _cubic_left_inverse(J)
    chart = eng.chart
    svec = []
    for c in range(J.dimW):
        acc = chart.zero()
        for k in range(J.dimW):
            coef = L[c][k]
            if coef:
                a, b = pairs[chosen[k]]
                acc = acc + coef * block[(a, b)]
        svec.append(acc)
    for (a, b) in pairs:
        expect = chart.zero()
        for c in range(J.dimW):
            v = tensor_get(J.C, a - 1, b - 1, c)
            if v and not svec[c].is_zero:
                expect = expect + v * svec[c]
        if not (block[(a, b)] - expect).is_zero:
            return False
    return True


def _hess_kernel(J):
    """Symmetric kappa with kappa^{ab} C_abc = 0, as index dictionaries."""
    N = J.dimW
    pairs = list(itertools.combinations_with_replacement(range(1, N + 1), 2))
    idx = {p: i for i, p in enumerate(pairs)}
    rows = []
    from .jordan import tensor_get
    for c in range(N):
        row = {}
        for (a, b) in pairs:
            v = tensor_get(J.C, a - 1, b - 1, c)
            if v:
                row[idx[(a, b)]] = v * (2 if a != b else 1)
        rows.append(row)
    basis = nullspace(rows, len(pairs))
    out = []
    for vec in basis:
        out.append({pairs[i]: c for i, c in vec.items()})
    return out


def is_symmetry_F(J, f, extra=None, framing_chart=None):
    """Prolonged tangency to the envelope hypersurface: S2(G_t) = 0 on it.

    Every jet occurrence enters through the contraction l^j u_jk, which
    takes the cone values on the hypersurface, so the restricted
    condition is a single first-jet identity in t.
    """
    eng = _TangencyEngine(J, f, extra=extra, chart=framing_chart)
    return eng.base_condition().is_zero


def is_symmetry_complete_2nd(chart2, rhs, f, require_point=False):
    """Symmetry of a complete second-order system u_ij = f_ij.

    rhs maps (i, j) -> Poly in (x, u, u_k).  With require_point the contact
    field must also preserve the vertical span (f affine in the u_k).
    """
    n = chart2.n
    f = chart2.import_poly(f)
    if require_point:
        for i in range(n):
            for j in range(n):
                if not f.derive(chart2.jet1_names[i]).derive(
                        chart2.jet1_names[j]).is_zero:
                    return False
    S2 = prolong(chart2, f, verify=False)
    subs = {chart2.jet2[key]: chart2.import_poly(val)
            for key, val in rhs.items()}
    for key, val in subs.items():
        g = chart2.var(key) - val
        out = S2.apply(g).substitute(subs)
        if not out.is_zero:
            return False
    return True


def is_symmetry_complete_3rd(chart3, rhs, f):
    """Symmetry of a complete third-order system u_ijk = f_ijk."""
    f = chart3.import_poly(f)
    S3 = prolong(chart3, f, verify=False)
    subs = {chart3.jet3[key]: chart3.import_poly(val)
            for key, val in rhs.items()}
    for key, val in subs.items():
        g = chart3.var(key) - val
        out = S3.apply(g).substitute(subs)
        if not out.is_zero:
            return False
    return True


# ---------------------------------------------------------------------------
# frame changes into standard jet coordinates
# ---------------------------------------------------------------------------


def framing_blocks(framing):
    """Expand a framing over the standard one: columns of (A B; C D)."""
    chart = framing.chart
    n = chart.n
    std = standard_framing(chart)
    A = [[None] * n for _ in range(n)]
    B = [[None] * n for _ in range(n)]
    C = [[None] * n for _ in range(n)]
    D = [[None] * n for _ in range(n)]
    for i, F in enumerate(framing.X):
        rho, mu, tau = expand_in_framing(std, F)
        if not tau.is_zero:
            raise ValueError("framing field leaves the contact distribution")
        for k in range(n):
            A[k][i] = rho[k]
            C[k][i] = mu[k]
    for j, F in enumerate(framing.U):
        rho, mu, tau = expand_in_framing(std, F)
        if not tau.is_zero:
            raise ValueError("framing field leaves the contact distribution")
        for k in range(n):
            B[k][j] = rho[k]
            D[k][j] = mu[k]
    return A, B, C, D


def curved_to_jet(J, framing, extra=None):
    """Standard-coordinate parametric system for the framing's structure.

    The fibre coordinates p_ij over the framing take the tangent-lift
    values; the frame change into the standard framing acts by the
    fractional-linear transformation on symmetric matrices.
    """
    chart = framing.chart
    n = chart.n
    need = [nm for nm in tparams(n) if nm not in chart.table]
    chart2 = chart.to_order(2, extra_params=tuple(need))
    framing2 = framing.on_chart(chart2)
    A, B, C, D = framing_blocks(framing2)
    vals = flat_E_values(J, chart2)
    if extra is not None:
        vals = dict(vals)
        vals[(0, 0)] = vals[(0, 0)] + chart2.import_poly(extra)
    P = [[as_ratfunc(vals[tuple(sorted((i, j)))]) for j in range(n)]
         for i in range(n)]
    U = mobius((A, B, C, D), P, chart2.table)
    eqs = {}
    for i in range(n):
        for j in range(i, n):
            if not (U[i][j] - U[j][i]).is_zero:
                raise AssertionError("frame change broke symmetry of the jet")
            eqs[(i, j)] = U[i][j]
    return PDESystem("parametric-E", chart2, eqs, framing=framing)
