"""Exterior-differential-system analysis of the tangent-lift system.

The parametrized second-order system carries a rank 2n-1 distribution with
a one-dimensional Cauchy characteristic space; quotienting produces the
second-order Monge system, whose solutions are written down and verified
in closed form.  The tableau of the linear Pfaffian system is tested for
involutivity by Cartan's test, and the covariant systems of the envelope
hypersurface are checked to recover the cone field.
"""

from __future__ import annotations

from .jets import (Chart, OneForm, RawChart, VectorField, pullback_form)
from .linalg import nullspace, rank_polymat
from .models import goursat_family, tparams, emit_V
from .rings import PARAMETER, Poly, QQ0, RatFunc, VarTable, as_ratfunc, qq


class FieldSpan:
    """Echelonized span of vector fields over the rational-function field.

    Pivot coordinates are chosen greedily, preferring syntactically small
    entries; reduce() returns the residual after projecting out the span,
    which is the class of the field in the quotient.
    """

    def __init__(self, chart):
        self.chart = chart
        self.rows = []   # (pivot name, field)

    def reduce(self, field):
        for pivot, row in self.rows:
            c = field.comps.get(pivot)
            if c is not None and not c.is_zero:
                coef = as_ratfunc(c) / as_ratfunc(row.comps[pivot])
                field = field - row.scale(coef)
        return field

    def insert(self, field):
        field = self.reduce(field)
        if field.is_zero:
            return False
        best = None
        for name, c in field.comps.items():
            size = len(c.num.terms) + len(c.den.terms) if isinstance(
                c, RatFunc) else len(c.terms)
            if best is None or size < best[0]:
                best = (size, name)
        self.rows.append((best[1], field))
        return True

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, field):
        return self.reduce(field).is_zero


def distribution_rank(fields):
    if not fields:
        return 0
    names = sorted({nm for F in fields for nm in F.comps})
    rows = [[F.comps.get(nm, F.chart.zero()) for nm in names] for F in fields]
    return rank_polymat(rows)


def cauchy_space_dim(fields):
    """dim of { X in D : [X, D] in D } over the fraction field."""
    span = FieldSpan(fields[0].chart)
    for F in fields:
        span.insert(F)
    k = len(fields)
    rows = []
    for j, Y in enumerate(fields):
        residuals = []
        for i, X in enumerate(fields):
            residuals.append(span.reduce(X.bracket(Y)))
        names = sorted({nm for r in residuals for nm in r.comps})
        for nm in names:
            rows.append([as_ratfunc(r.comps.get(nm, Y.chart.zero()),
                                    Y.chart.table) for r in residuals])
    if not rows:
        return k
    rank = rank_polymat(rows)
    return k - rank


# ---------------------------------------------------------------------------
# the tangent-lift system as a PD-manifold
# ---------------------------------------------------------------------------


class TangentLiftSystem:
    """Chart (x^i, u, u_i, t^a) with the induced distribution and forms."""

    def __init__(self, J):
        self.J = J
        self.n = J.n
        self.chart = Chart(self.n, order=1, params=tparams(self.n))
        chart = self.chart
        n = self.n
        zero = chart.zero()
        self.t = [chart.var("t%d" % a) for a in range(1, n)]
        vals = {}
        c3 = J.cubic(self.t, zero)
        grad = J.grad(self.t, zero)
        hess = J.hess(self.t, zero)
        vals[(0, 0)] = c3
        for a in range(1, n):
            vals[(0, a)] = qq(3, 2) * grad[a - 1]
            vals[(a, 0)] = vals[(0, a)]
            for b in range(1, n):
                vals[(a, b)] = 3 * hess[a - 1][b - 1]
        self.jet_values = vals
        self.T = [VectorField(chart, {"t%d" % a: chart.one()})
                  for a in range(1, n)]
        self.X = []
        for i in range(n):
            comps = {chart.base_names[i]: chart.one(), "u": chart.du(i)}
            for j in range(n):
                comps[chart.jet1_names[j]] = vals[(i, j)]
            self.X.append(VectorField(chart, comps))
        # dual Pfaffian system
        self.sigma = OneForm(chart, dict(
            [("u", chart.one())] + [(chart.base_names[i], -chart.du(i))
                                    for i in range(n)]))
        self.thetas = []
        for i in range(n):
            comps = {chart.jet1_names[i]: chart.one()}
            for j in range(n):
                comps[chart.base_names[j]] = -vals[(i, j)]
            self.thetas.append(OneForm(chart, comps))

    def fields(self):
        return self.T + self.X

    def duality_ok(self):
        for form in [self.sigma] + self.thetas:
            for F in self.fields():
                if not form.pair(F).is_zero:
                    return False
        return True

    def bracket_identities_ok(self):
        """[T_a, X_b] = 3 C_ab(t) d/du_0 + 3 C_abc d/du_c and the
        0-column relation [T_a, X_0] = t^b [T_a, X_b]."""
        chart = self.chart
        n = self.n
        zero = chart.zero()
        hess = self.J.hess(self.t, zero)
        for a in range(1, n):
            for b in range(1, n):
                br = self.T[a - 1].bracket(self.X[b])
                comps = {chart.jet1_names[0]: 3 * hess[a - 1][b - 1]}
                for c in range(1, n):
                    from .jordan import tensor_get
                    v = tensor_get(self.J.C, a - 1, b - 1, c - 1)
                    if v:
                        comps[chart.jet1_names[c]] = chart.const(3 * v)
                if not (br - VectorField(chart, comps)).is_zero:
                    return False
            br0 = self.T[a - 1].bracket(self.X[0])
            acc = VectorField(chart, {})
            for b in range(1, n):
                acc = acc + self.T[a - 1].bracket(self.X[b]).scale(
                    self.t[b - 1])
            if not (br0 - acc).is_zero:
                return False
        return True

    def derived_rank(self):
        """rank(D + [D, D]); brackets are purely vertical, so the rank
        splits as rank(D) + rank of the bracket block."""
        fields = list(self.fields())
        chart = self.chart
        vert = [nm for nm in chart.jet1_names]
        horiz = set(chart.base_names) | {"u"} | {"t%d" % a
                                                 for a in range(1, self.n)}
        rows = []
        for i in range(len(fields)):
            for j in range(i + 1, len(fields)):
                br = fields[i].bracket(fields[j])
                if br.is_zero:
                    continue
                for nm in br.comps:
                    assert nm not in horiz, "bracket left the vertical space"
                rows.append([br.coeff(nm) for nm in vert])
        base_rank = distribution_rank(fields)
        return base_rank + (rank_polymat(rows) if rows else 0)

    def cauchy_field(self):
        """Z = X_0 - t^a X_a, the generator of the characteristic line."""
        Z = self.X[0]
        for a in range(1, self.n):
            Z = Z - self.X[a].scale(self.t[a - 1])
        return Z

    def cauchy_checks(self):
        """[Z, T_a] = X_a, [Z, X_i] = 0, rank Ch(D) = 1, Z not in Ch(C~)."""
        Z = self.cauchy_field()
        for a in range(1, self.n):
            if not (Z.bracket(self.T[a - 1]) - self.X[a]).is_zero:
                return False
        for i in range(self.n):
            if not Z.bracket(self.X[i]).is_zero:
                return False
        if cauchy_space_dim(self.fields()) != 1:
            return False
        # Z does not preserve the big hyperplane field ann(sigma)
        U0 = VectorField(self.chart, {self.chart.jet1_names[0]:
                                      self.chart.one()})
        br = Z.bracket(U0)
        if self.sigma.pair(br).is_zero:
            return False
        return True

    def invariants(self):
        chart = self.chart
        n = self.n
        zero = chart.zero()
        x0 = chart.x(0)
        c3 = self.J.cubic(self.t, zero)
        grad = self.J.grad(self.t, zero)
        inv = {}
        for a in range(1, n):
            inv["X%d" % a] = chart.x(a) + self.t[a - 1] * x0
        tu = sum((self.t[a - 1] * chart.du(a) for a in range(1, n)), zero)
        inv["U"] = chart.u() - (chart.du(0) - tu) * x0 + c3 * x0 * x0 / 2
        for a in range(1, n):
            inv["U%d" % a] = chart.du(a) + qq(3, 2) * grad[a - 1] * x0
        for a in range(1, n):
            inv["T%d" % a] = self.t[a - 1]
        inv["Z"] = chart.du(0) + c3 * x0 / 2
        return inv

    def invariants_killed_by_cauchy(self):
        Z = self.cauchy_field()
        return all(Z.apply(v).is_zero for v in self.invariants().values())


# ---------------------------------------------------------------------------
# reduced (Monge) system
# ---------------------------------------------------------------------------


class MongeSystem:
    """The quotient system on coordinates (X^a, U, U_a, T^a, Z)."""

    def __init__(self, J):
        self.J = J
        self.n = J.n
        n = self.n
        names = ["X%d" % a for a in range(1, n)] + ["U"] + \
            ["U%d" % a for a in range(1, n)] + \
            ["T%d" % a for a in range(1, n)] + ["Z"]
        self.chart = RawChart(VarTable([(nm, PARAMETER) for nm in names]))
        chart = self.chart
        zero = chart.zero()
        self.T = [chart.var("T%d" % a) for a in range(1, n)]
        grad = J.grad(self.T, zero)
        hess = J.hess(self.T, zero)
        self.omega = OneForm(chart, dict(
            [("Z", chart.one())] + [("X%d" % a, -qq(3, 2) * grad[a - 1])
                                    for a in range(1, n)]))
        self.theta = OneForm(chart, dict(
            [("U", chart.one())] + [("X%d" % a, -chart.var("U%d" % a))
                                    for a in range(1, n)]))
        self.theta_a = []
        for a in range(1, n):
            comps = {"U%d" % a: chart.one()}
            for b in range(1, n):
                comps["X%d" % b] = -3 * hess[a - 1][b - 1]
            self.theta_a.append(OneForm(chart, comps))
        self.dT = [VectorField(chart, {"T%d" % a: chart.one()})
                   for a in range(1, n)]
        self.Y = []
        for a in range(1, n):
            comps = {"X%d" % a: chart.one(), "U": chart.var("U%d" % a),
                     "Z": qq(3, 2) * grad[a - 1]}
            for b in range(1, n):
                comps["U%d" % b] = 3 * hess[a - 1][b - 1]
            self.Y.append(VectorField(chart, comps))

    def forms(self):
        return [self.omega, self.theta] + self.theta_a

    def duality_ok(self):
        return all(form.pair(F).is_zero
                   for form in self.forms() for F in self.dT + self.Y)

    def bracket_identity_ok(self):
        """[d/dT^a, Y_b] = 3 C_abc d/dU_c + 3 C_ab(T) d/dZ."""
        from .jordan import tensor_get
        chart = self.chart
        n = self.n
        zero = chart.zero()
        hess = self.J.hess(self.T, zero)
        for a in range(1, n):
            for b in range(1, n):
                br = self.dT[a - 1].bracket(self.Y[b - 1])
                comps = {"Z": 3 * hess[a - 1][b - 1]}
                for c in range(1, n):
                    v = tensor_get(self.J.C, a - 1, b - 1, c - 1)
                    if v:
                        comps["U%d" % c] = chart.const(3 * v)
                if not (br - VectorField(chart, comps)).is_zero:
                    return False
        return True

    def section_pullback_ok(self, tls):
        """Pulling the upstairs Pfaffian system back by the x^0 = 0 section
        reproduces (theta, omega, theta_a) exactly."""
        chart = self.chart
        n = self.n
        zero = chart.zero()
        binds = {"x0": zero, "u": chart.var("U"),
                 "u0": chart.var("Z")}
        for a in range(1, n):
            binds["x%d" % a] = chart.var("X%d" % a)
            binds["u%d" % a] = chart.var("U%d" % a)
            binds["t%d" % a] = chart.var("T%d" % a)
        got_sigma = pullback_form(tls.sigma, binds, chart)
        if not _forms_equal(got_sigma, self.theta):
            return False
        got0 = pullback_form(tls.thetas[0], binds, chart)
        if not _forms_equal(got0, self.omega):
            return False
        for a in range(1, n):
            got = pullback_form(tls.thetas[a], binds, chart)
            if not _forms_equal(got, self.theta_a[a - 1]):
                return False
        return True

    def equations_text(self):
        from .emit import value_str
        n = self.n
        out = []
        zero = self.chart.zero()
        grad = self.J.grad(self.T, zero)
        hess = self.J.hess(self.T, zero)
        for a in range(1, n):
            out.append("Z_%d = %s" % (a, value_str(qq(3, 2) * grad[a - 1])))
        for a in range(1, n):
            for b in range(a, n):
                out.append("U_%d%d = %s" % (a, b,
                                            value_str(3 * hess[a - 1][b - 1])))
        return out


def _forms_equal(f, g):
    return not (f - g).comps


# ---------------------------------------------------------------------------
# Monge solutions
# ---------------------------------------------------------------------------


def monge_solution_check(J):
    """Substitute the closed-form solutions into the reduced equations.

    For general W: T = lam X + mu with
        Z = lam^2/2 C(X^3) + (3 lam/2) C_a(X^2) mu^a
            + (3/2) C_ab(X) mu^a mu^b + const,
        U = lam/2 C(X^3) + (3/2) C_a(X^2) mu^a + nu_a X^a + const;
    the compatibility condition C_{ac[b} T^c_{,e]} = 0 holds since
    T^c_{,e} = lam delta.  Everything is verified exactly; solutions carry
    2n + 1 arbitrary constants.
    """
    n = J.n
    m = n - 1
    names = ["X%d" % a for a in range(1, n)] + ["lam"] + \
        ["mu%d" % a for a in range(1, n)] + ["nu%d" % a for a in range(1, n)]
    T = VarTable([(nm, PARAMETER) for nm in names])
    X = [T.var("X%d" % a) for a in range(1, n)]
    lam = T.var("lam")
    mu = [T.var("mu%d" % a) for a in range(1, n)]
    zero = T.zero()
    Tvec = [lam * X[a] + mu[a] for a in range(m)]
    cX = J.cubic(X, zero)
    gX = J.grad(X, zero)
    hX = J.hess(X, zero)
    Zsol = lam * lam * cX / 2
    for a in range(m):
        Zsol = Zsol + qq(3, 2) * lam * gX[a] * mu[a]
        for b in range(m):
            Zsol = Zsol + qq(3, 2) * hX[a][b] * mu[a] * mu[b]
    Usol = lam * cX / 2
    for a in range(m):
        Usol = Usol + qq(3, 2) * gX[a] * mu[a] + T.var("nu%d" % (a + 1)) * X[a]
    gT = J.grad(Tvec, zero)
    hT = J.hess(Tvec, zero)
    for a in range(m):
        if not (Zsol.derive("X%d" % (a + 1)) - qq(3, 2) * gT[a]).is_zero:
            return False
        for b in range(m):
            d2 = Usol.derive("X%d" % (a + 1)).derive("X%d" % (b + 1))
            if not (d2 - 3 * hT[a][b]).is_zero:
                return False
    # compatibility: C_{ac[b} dT^c/dX^e_] = 0 with dT^c/dX^e = lam delta,
    # i.e. lam (C_{aeb} - C_{abe}) = 0, which total symmetry grants
    from .jordan import tensor_get
    for a in range(m):
        for b in range(m):
            for e in range(m):
                if tensor_get(J.C, a, e, b) != tensor_get(J.C, a, b, e):
                    return False
    return True


def monge_constants_count(J):
    return 2 * J.n + 1


def hilbert_cartan_reduction_ok(J1):
    """For the 1-dimensional algebra the reduced system eliminates T to
    Z' = (U'')^2 / 2."""
    ms = MongeSystem(J1)
    zero = ms.chart.zero()
    grad = J1.grad(ms.T, zero)
    hess = J1.hess(ms.T, zero)
    z1 = qq(3, 2) * grad[0]
    u11 = 3 * hess[0][0]
    return (z1 - u11 * u11 / 2).is_zero


def b3_monge_equations(Jjs1):
    """Z_x = U_xx U_xy, Z_y = (U_xy)^2 / 2, U_yy = 0 for the rank-2 spin
    factor, written in the (x, y) = (X^1, X^2) coordinates."""
    ms = MongeSystem(Jjs1)
    zero = ms.chart.zero()
    grad = Jjs1.grad(ms.T, zero)
    hess = Jjs1.hess(ms.T, zero)
    eqs = {
        "Z_x": qq(3, 2) * grad[0],
        "Z_y": qq(3, 2) * grad[1],
        "U_xx": 3 * hess[0][0],
        "U_xy": 3 * hess[0][1],
        "U_yy": 3 * hess[1][1],
    }
    ok = (eqs["Z_x"] - eqs["U_xx"] * eqs["U_xy"]).is_zero and \
        (eqs["Z_y"] - eqs["U_xy"] ** 2 / 2).is_zero and eqs["U_yy"].is_zero
    return ok, eqs


def _poly_antiderivative(p, name):
    i = p.table.index(name)
    out = {}
    for m, c in p.terms.items():
        e = 0
        rest = []
        for j, ej in m:
            if j == i:
                e = ej
            else:
                rest.append((j, ej))
        nm = tuple(sorted(rest + [(i, e + 1)]))
        out[nm] = c / (e + 1)
    return Poly(p.table, out)


def b3_polynomial_solutions_ok(Jjs1, degree=6):
    """U = f(x) y + g(x), Z = f'(x)^2 y / 2 + int f' g'' dx solves the
    reduced system exactly, with f, g arbitrary polynomials of the given
    degree (free coefficients are symbolic)."""
    names = ["x", "y"] + ["f%d" % k for k in range(degree + 1)] + \
        ["g%d" % k for k in range(degree + 1)]
    T = VarTable([(nm, PARAMETER) for nm in names])
    x, y = T.var("x"), T.var("y")
    f = sum((T.var("f%d" % k) * x ** k for k in range(degree + 1)), T.zero())
    g = sum((T.var("g%d" % k) * x ** k for k in range(degree + 1)), T.zero())
    fp = f.derive("x")
    U = f * y + g
    Z = fp * fp * y / 2 + _poly_antiderivative(fp * g.derive("x").derive("x"),
                                               "x")
    z_x = Z.derive("x")
    z_y = Z.derive("y")
    u_xx = U.derive("x").derive("x")
    u_xy = U.derive("x").derive("y")
    u_yy = U.derive("y").derive("y")
    return (z_x - u_xx * u_xy).is_zero and (z_y - u_xy ** 2 / 2).is_zero \
        and u_yy.is_zero


# ---------------------------------------------------------------------------
# involutivity of the linear Pfaffian system
# ---------------------------------------------------------------------------


def indeterminacy_and_involutivity(J):
    """(r1, characters, involutive) by direct tableau analysis.

    r1 counts replacements pi^c -> pi^c + A^c_i omega^i preserving the
    structure equations: the 0-column is forced to vanish by injectivity
    of the cubic map, the rest is the skew-cubic kernel.  Characters come
    from generic column ranks of the tableau C_abc pi^c.
    """
    N = J.dimW

    def unk(c, i):
        return c * (N + 1) + i

    rows = []
    from .jordan import tensor_get
    # omega^b ^ omega^0 coefficients: C_ab(A_0) = 0
    for a in range(N):
        for b in range(N):
            row = {}
            for c in range(N):
                v = tensor_get(J.C, a, b, c)
                if v:
                    row[unk(c, 0)] = v
            if row:
                rows.append(row)
    # omega^b ^ omega^d coefficients: C_{ac[b} A^c_{d]} = 0
    for a in range(N):
        for b in range(N):
            for d in range(b + 1, N):
                row = {}
                for c in range(N):
                    v1 = tensor_get(J.C, a, c, b)
                    if v1:
                        row[unk(c, d + 1)] = row.get(unk(c, d + 1), QQ0) + v1
                    v2 = tensor_get(J.C, a, c, d)
                    if v2:
                        row[unk(c, b + 1)] = row.get(unk(c, b + 1), QQ0) - v2
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    r1 = len(nullspace(rows, N * (N + 1)))
    # Cartan characters from stacked generic columns of C_ab(v)
    vnames = []
    for k in range(N):
        vnames += ["v%d_%d" % (k, c) for c in range(N)]
    T = VarTable([(nm, PARAMETER) for nm in vnames])
    from .linalg import rank_polymat_certified
    chars = []
    prev = 0
    stacked = []
    for k in range(N):
        if prev == N:
            break
        v = [T.var("v%d_%d" % (k, c)) for c in range(N)]
        hv = J.hess(v, T.zero())
        stacked.extend(hv)
        rank = rank_polymat_certified(stacked)
        chars.append(rank - prev)
        if rank == prev:
            break
        prev = rank
    chars = [s for s in chars if s > 0]
    total = sum((k + 1) * s for k, s in enumerate(chars))
    involutive = (total == r1)
    return r1, chars, involutive


# ---------------------------------------------------------------------------
# covariant systems of the envelope hypersurface
# ---------------------------------------------------------------------------


class GoursatCovariants:
    """The first-order covariant system and its characteristic subsystem."""

    def __init__(self, J):
        self.J = J
        self.n = J.n
        n = self.n
        wnames = []
        self.wkey = {}
        for a in range(1, n):
            for b in range(a, n):
                nm = "w_%d_%d" % (a, b)
                self.wkey[(a, b)] = nm
                wnames.append(nm)
        self.chart = Chart(n, order=1,
                           params=tparams(n) + tuple(wnames))
        chart = self.chart
        zero = chart.zero()
        self.t = [chart.var("t%d" % a) for a in range(1, n)]
        c3 = J.cubic(self.t, zero)
        grad = J.grad(self.t, zero)

        def w(a, b):
            return chart.var(self.wkey[tuple(sorted((a, b)))])

        vals = {}
        vals[(0, 0)] = -2 * c3
        for a in range(1, n):
            for b in range(1, n):
                vals[(0, 0)] = vals[(0, 0)] + self.t[a - 1] * self.t[b - 1] \
                    * w(a, b)
        for a in range(1, n):
            v = -qq(3, 2) * grad[a - 1]
            for b in range(1, n):
                v = v + self.t[b - 1] * w(a, b)
            vals[(a, 0)] = v
            vals[(0, a)] = v
        for a in range(1, n):
            for b in range(1, n):
                vals[(a, b)] = w(a, b)
        self.X = []
        for i in range(n):
            comps = {chart.base_names[i]: chart.one(), "u": chart.du(i)}
            for j in range(n):
                comps[chart.jet1_names[j]] = vals[(i, j)]
            self.X.append(VectorField(chart, comps))
        self.dT = [VectorField(chart, {"t%d" % a: chart.one()})
                   for a in range(1, n)]
        self.dW = [VectorField(chart, {nm: chart.one()}) for nm in wnames]
        self.extraN = []
        for a in range(1, n):
            self.extraN.append(VectorField(chart, {
                chart.jet1_names[0]: self.t[a - 1],
                chart.jet1_names[a]: chart.one()}))
        zm = {chart.base_names[0]: chart.one(), "u": chart.du(0),
              chart.jet1_names[0]: -c3 / 2}
        ZM = VectorField(chart, zm)
        for a in range(1, n):
            ZM = ZM - VectorField(chart, {chart.base_names[a]: chart.one(),
                                          "u": chart.du(a)}).scale(
                self.t[a - 1])
            ZM = ZM - VectorField(chart, {
                chart.jet1_names[a]: qq(3, 2) * grad[a - 1]})
        self.ZM = ZM

    def D_fields(self):
        return self.dT + self.dW + self.X

    def N_fields(self):
        return self.D_fields() + self.extraN

    def M_fields(self):
        return [self.ZM] + self.dW

    def monge_char_is_characteristic(self):
        """M lies in N and brackets of M with N stay in N."""
        span = FieldSpan(self.chart)
        for F in self.N_fields():
            span.insert(F)
        for Mf in self.M_fields():
            if not span.contains(Mf):
                return False
            for Nf in self.N_fields():
                if not span.contains(Mf.bracket(Nf)):
                    return False
        return True

    def characteristic_dim_matches(self):
        return cauchy_space_dim(self.N_fields()) == len(self.M_fields())

    def cauchy_of_D_trivial(self):
        return cauchy_space_dim(self.D_fields()) == 0

    def derived_fills_hyperplane(self):
        """D^{-2} = ann(sigma) away from the tangent-lift locus."""
        fields = self.D_fields()
        extra = []
        for i in range(len(fields)):
            for j in range(i + 1, len(fields)):
                extra.append(fields[i].bracket(fields[j]))
        rank = distribution_rank(fields + extra)
        dimF = 2 * self.n + self.n * (self.n + 1) // 2
        return rank == dimF - 1

    def parabolicity_rank_one(self):
        """The jet-gradient of the defining function is a rank-one square."""
        n = self.n
        chart2 = Chart(n, order=2, params=tparams(n))
        G = goursat_family(self.J, chart2)
        M = [[G.derive(chart2.jet2[tuple(sorted((i, j)))]) *
              (1 if i == j else qq(1, 2))
              for j in range(n)] for i in range(n)]
        return rank_polymat(M) == 1

    def projection_recovers_cone(self):
        """Ch(N)'s non-vertical direction projects to V(1, t)."""
        from .jets import standard_framing
        proj = VectorField(self.chart, {
            nm: c for nm, c in self.ZM.comps.items()
            if nm in self.chart.first_jet_names()})
        fr = standard_framing(self.chart)
        V = emit_V(self.J, fr, with_lambda=False)
        return (proj - V).is_zero
