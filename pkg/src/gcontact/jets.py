"""Jet-space charts, contact vector fields and frame changes.

A chart models J^k(C^n, C) with coordinates (x^i, u, u_i, u_ij, ...) and the
contact form sigma = du - u_i dx^i.  Contact vector fields are produced from
generating functions on the first jet; their bracket is mirrored by the
Lagrange bracket on generating functions.  Conformal-symplectic framings of
the contact distribution carry the geometric structures built downstream.
"""

from __future__ import annotations

import itertools

from .rings import (BASE, DEPENDENT, JET1, JET2, JET3, PARAMETER,
                    EXPONENTIAL, Poly, RatFunc, VarTable, as_ratfunc, qq)
from .linalg import invert_matrix, mat_mul, solve_field


def _sum(items, zero=None):
    out = None
    for it in items:
        out = it if out is None else out + it
    return zero if out is None else out


class Chart:
    """Coordinates on J^order(C^n, C), plus optional parameters.

    Base variables default to x0..x{n-1} and first-jet ones to u0..u{n-1};
    callers may rename them (the plane models use (x, y, u, p, q)).  Jet
    variables of order two and three are u_ij / u_ijk with sorted indices.
    """

    def __init__(self, n, order=1, base_names=None, jet1_names=None,
                 params=(), exponentials=()):
        self.n = n
        self.order = order
        self._expo_spec = [(nm, dict(dr)) for nm, dr in exponentials]
        self.base_names = list(base_names) if base_names else [
            "x%d" % i for i in range(n)]
        self.jet1_names = list(jet1_names) if jet1_names else [
            "u%d" % i for i in range(n)]
        if len(self.base_names) != n or len(self.jet1_names) != n:
            raise ValueError("need %d base and first-jet names" % n)
        entries = [(nm, BASE) for nm in self.base_names]
        entries.append(("u", DEPENDENT))
        entries += [(nm, JET1) for nm in self.jet1_names]
        self.jet2 = {}
        self.jet3 = {}
        if order >= 2:
            for i, j in itertools.combinations_with_replacement(range(n), 2):
                nm = "u_%d_%d" % (i, j)
                self.jet2[(i, j)] = nm
                entries.append((nm, JET2))
        if order >= 3:
            for i, j, k in itertools.combinations_with_replacement(range(n), 3):
                nm = "u_%d_%d_%d" % (i, j, k)
                self.jet3[(i, j, k)] = nm
                entries.append((nm, JET3))
        for p in params:
            entries.append((p, PARAMETER))
        for name, deriv in self._expo_spec:
            entries.append((name, EXPONENTIAL, 0, deriv))
        self.params = list(params)
        self.exponentials = [e[0] for e in self._expo_spec]
        self.table = VarTable(entries)

    # -- variable access --------------------------------------------------

    def x(self, i):
        return self.table.var(self.base_names[i])

    def u(self):
        return self.table.var("u")

    def du(self, i):
        return self.table.var(self.jet1_names[i])

    def d2u(self, i, j):
        return self.table.var(self.jet2[tuple(sorted((i, j)))])

    def d3u(self, i, j, k):
        return self.table.var(self.jet3[tuple(sorted((i, j, k)))])

    def var(self, name):
        return self.table.var(name)

    def zero(self):
        return self.table.zero()

    def one(self):
        return self.table.one()

    def const(self, c):
        return self.table.const(c)

    def to_order(self, order, extra_params=(), exponentials=()):
        """Chart with the same naming extended to a higher jet order."""
        return Chart(self.n, order, self.base_names, self.jet1_names,
                     params=tuple(self.params) + tuple(extra_params),
                     exponentials=self._expo_spec + list(exponentials))

    def with_params(self, *names):
        return Chart(self.n, self.order, self.base_names, self.jet1_names,
                     params=tuple(self.params) + tuple(names),
                     exponentials=self._expo_spec)

    def first_jet_names(self):
        return self.base_names + ["u"] + self.jet1_names

    def import_poly(self, p):
        """Bring a polynomial from a chart sharing variable names."""
        if p.table is self.table:
            return p
        if self.table.extends(p.table):
            return p.lift(self.table)
        images = {p.table.names[i]: self.table.var(p.table.names[i])
                  for i in p.variables()}
        return p.map_to(self.table, images)

    def import_field(self, F):
        out = {}
        for name, c in F.comps.items():
            if isinstance(c, RatFunc):
                out[name] = RatFunc(self.import_poly(c.num),
                                    self.import_poly(c.den), reduced=True)
            else:
                out[name] = self.import_poly(c)
        return VectorField(self, out)


class RawChart:
    """Bare coordinate chart over a variable table (no jet structure)."""

    def __init__(self, table):
        self.table = table

    def var(self, name):
        return self.table.var(name)

    def zero(self):
        return self.table.zero()

    def one(self):
        return self.table.one()

    def const(self, c):
        return self.table.const(c)


class VectorField:
    """Sparse vector field: map coordinate name -> Poly/RatFunc coefficient."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart, comps):
        self.chart = chart
        self.comps = {k: v for k, v in comps.items() if not v.is_zero}

    def coeff(self, name):
        c = self.comps.get(name)
        if c is None:
            return self.chart.zero()
        return c

    def apply(self, h):
        """Derivation on functions (Poly or RatFunc)."""
        out = None
        for name, c in self.comps.items():
            d = h.derive(name)
            if d.is_zero:
                continue
            t = c * d
            out = t if out is None else out + t
        if out is None:
            return self.chart.zero() if isinstance(h, Poly) else \
                RatFunc.wrap(self.chart.zero())
        return out

    def bracket(self, other):
        """Commutator [X, Y], componentwise X(Y^k) - Y(X^k)."""
        comps = {}
        names = set(self.comps) | set(other.comps)
        for name in names:
            a = self.apply(other.coeff(name))
            b = other.apply(self.coeff(name))
            comps[name] = a - b
        return VectorField(self.chart, comps)

    def __add__(self, other):
        comps = dict(self.comps)
        for k, v in other.comps.items():
            comps[k] = comps[k] + v if k in comps else v
        return VectorField(self.chart, comps)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if isinstance(c, (Poly, RatFunc)):
            return VectorField(self.chart,
                               {k: c * v for k, v in self.comps.items()})
        c = qq(c)
        return VectorField(self.chart,
                           {k: v * c for k, v in self.comps.items()})

    def substitute(self, bindings):
        return VectorField(self.chart, {k: v.substitute(bindings)
                                        for k, v in self.comps.items()})

    @property
    def is_zero(self):
        return not self.comps

    def __str__(self):
        if not self.comps:
            return "0"
        parts = []
        for name in self.chart.table.names:
            if name in self.comps:
                parts.append("(%s)*d_%s" % (self.comps[name], name))
        return " + ".join(parts)

    def __repr__(self):
        return "VectorField(%s)" % self


def _func_vars(c):
    if isinstance(c, RatFunc):
        return c.num.variables() | c.den.variables()
    return c.variables()


class OneForm:
    """Sparse 1-form: map coordinate name -> coefficient."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart, comps):
        self.chart = chart
        self.comps = {k: v for k, v in comps.items() if not v.is_zero}

    def pair(self, field):
        out = None
        for name, c in self.comps.items():
            fc = field.comps.get(name)
            if fc is None:
                continue
            t = c * fc
            out = t if out is None else out + t
        return self.chart.zero() if out is None else out

    def __add__(self, other):
        comps = dict(self.comps)
        for k, v in other.comps.items():
            comps[k] = comps[k] + v if k in comps else v
        return OneForm(self.chart, comps)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return OneForm(self.chart, {k: c * v for k, v in self.comps.items()})

    def d(self):
        """Exterior derivative as a TwoForm."""
        comps = {}
        for name, c in self.comps.items():
            for v in sorted(_func_vars(c)):
                vn = self.chart.table.names[v]
                dc = c.derive(vn)
                if dc.is_zero:
                    continue
                a, b = vn, name
                sign = 1
                if a == b:
                    continue
                if self.chart.table.index(a) > self.chart.table.index(b):
                    a, b = b, a
                    sign = -1
                key = (a, b)
                t = dc if sign == 1 else -dc
                comps[key] = comps[key] + t if key in comps else t
        return TwoForm(self.chart, comps)

    def lie_derivative(self, field):
        """(L_X a)_v = X(a_v) + a_w dX^w/dv."""
        chart = self.chart
        out = {}
        for name, c in self.comps.items():
            out[name] = field.apply(c)
        for wname, a_w in self.comps.items():
            xw = field.comps.get(wname)
            if xw is None:
                continue
            for v in _func_vars(xw):
                vn = chart.table.names[v]
                d = xw.derive(vn)
                if d.is_zero:
                    continue
                t = a_w * d
                out[vn] = out[vn] + t if vn in out else t
        return OneForm(chart, out)

    def __str__(self):
        parts = ["(%s)*d%s" % (v, k) for k, v in self.comps.items()]
        return " + ".join(parts) if parts else "0"


class TwoForm:
    __slots__ = ("chart", "comps")

    def __init__(self, chart, comps):
        self.chart = chart
        self.comps = {k: v for k, v in comps.items() if not v.is_zero}

    def pair(self, X, Y):
        out = None
        for (a, b), c in self.comps.items():
            t = c * (X.coeff(a) * Y.coeff(b) - X.coeff(b) * Y.coeff(a))
            out = t if out is None else out + t
        return self.chart.zero() if out is None else out


def wedge(a, b):
    comps = {}
    for na, ca in a.comps.items():
        for nb, cb in b.comps.items():
            if na == nb:
                continue
            x, y = na, nb
            sign = 1
            if a.chart.table.index(x) > a.chart.table.index(y):
                x, y = y, x
                sign = -1
            t = ca * cb if sign == 1 else -(ca * cb)
            key = (x, y)
            comps[key] = comps[key] + t if key in comps else t
    return TwoForm(a.chart, comps)


def pullback_form(form, bindings, target_chart):
    """Pull a 1-form back along the map given by name -> target expression.

    Every variable appearing in the form (in coefficients or differentials)
    must be bound.
    """
    table = target_chart.table
    out = {}
    for name, c in form.comps.items():
        cc = c.map_to(table, bindings)
        expr = bindings[name]
        if not isinstance(expr, Poly):
            continue
        for v in expr.variables():
            vn = table.names[v]
            d = expr.derive(vn)
            if d.is_zero:
                continue
            t = cc * d
            out[vn] = out[vn] + t if vn in out else t
    return OneForm(target_chart, out)


def contact_form(chart):
    comps = {"u": chart.one()}
    for i in range(chart.n):
        comps[chart.base_names[i]] = -chart.du(i)
    return OneForm(chart, comps)


def second_order_contact_forms(chart):
    """The forms du_i - u_ij dx^j on a chart of order >= 2."""
    out = []
    for i in range(chart.n):
        comps = {chart.jet1_names[i]: chart.one()}
        for j in range(chart.n):
            comps[chart.base_names[j]] = -chart.d2u(i, j)
        out.append(OneForm(chart, comps))
    return out


def third_order_contact_forms(chart):
    """The forms du_ij - u_ijk dx^k on a chart of order >= 3."""
    out = []
    for (i, j), nm in sorted(chart.jet2.items()):
        comps = {nm: chart.one()}
        for k in range(chart.n):
            comps[chart.base_names[k]] = -chart.d3u(i, j, k)
        out.append(OneForm(chart, comps))
    return out


# ---------------------------------------------------------------------------
# generating functions -> contact fields, Lagrange bracket, prolongation
# ---------------------------------------------------------------------------


def _check_first_jet(chart, f):
    allowed = set(chart.first_jet_names()) | set(chart.params) | set(
        chart.exponentials)
    for v in f.variables():
        if chart.table.names[v] not in allowed:
            raise ValueError("generating function depends on %s"
                             % chart.table.names[v])


def lift(chart, f):
    """Contact vector field of a generating function on the first jet.

    -f_{u_i} d/dx^i + (f - u_i f_{u_i}) d/du + (f_{x^i} + u_i f_u) d/du_i.
    """
    f = chart.import_poly(f)
    _check_first_jet(chart, f)
    comps = {}
    fu = f.derive("u")
    u_part = f
    for i in range(chart.n):
        fui = f.derive(chart.jet1_names[i])
        if not fui.is_zero:
            comps[chart.base_names[i]] = -fui
            u_part = u_part - chart.du(i) * fui
        fxi = f.derive(chart.base_names[i]) + chart.du(i) * fu
        if not fxi.is_zero:
            comps[chart.jet1_names[i]] = fxi
    comps["u"] = u_part
    return VectorField(chart, comps)


def total_derivative(chart, h, i):
    """Truncated total derivative D_i at the chart's top jet order."""
    out = h.derive(chart.base_names[i]) + chart.du(i) * h.derive("u")
    if chart.order >= 2:
        for j in range(chart.n):
            d = h.derive(chart.jet1_names[j])
            if not d.is_zero:
                out = out + chart.d2u(i, j) * d
    if chart.order >= 3:
        for (j, k), nm in chart.jet2.items():
            d = h.derive(nm)
            if not d.is_zero:
                out = out + chart.d3u(i, j, k) * d
    return out


def lagrange(chart, f, g):
    """Lagrange bracket f g_u - g f_u + (df/dx^i) g_{u_i} - (dg/dx^i) f_{u_i}."""
    f = chart.import_poly(f)
    g = chart.import_poly(g)
    fu = f.derive("u")
    gu = g.derive("u")
    out = f * gu - g * fu
    for i in range(chart.n):
        xi = chart.base_names[i]
        ui = chart.jet1_names[i]
        gui = g.derive(ui)
        if not gui.is_zero:
            out = out + (f.derive(xi) + chart.du(i) * fu) * gui
        fui = f.derive(ui)
        if not fui.is_zero:
            out = out - (g.derive(xi) + chart.du(i) * gu) * fui
    return out


def prolong(chart2, f, verify=True):
    """Prolongation of the contact field of f to a chart of order 2 or 3.

    The coefficient on u_{J,i} is D_i(coeff on u_J) - u_{J,k} D_i(x^k-coeff);
    the result is checked to preserve the canonical contact system exactly
    unless verify is disabled.
    """
    if chart2.order < 2:
        raise ValueError("prolongation needs a chart of order >= 2")
    base = lift(chart2, f)
    comps = dict(base.comps)
    n = chart2.n
    xi_coeff = [base.coeff(chart2.base_names[k]) for k in range(n)]
    dxi = [[total_derivative(chart2, xi_coeff[k], j) for j in range(n)]
           for k in range(n)]
    phi1 = [base.coeff(chart2.jet1_names[i]) for i in range(n)]
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        val = total_derivative(chart2, phi1[i], j)
        for k in range(n):
            if not xi_coeff[k].is_zero:
                val = val - chart2.d2u(i, k) * dxi[k][j]
        if not val.is_zero:
            comps[chart2.jet2[(i, j)]] = val
    field = VectorField(chart2, comps)
    if chart2.order >= 3:
        for i, j, k in itertools.combinations_with_replacement(range(n), 3):
            phi2 = field.coeff(chart2.jet2[(i, j)])
            val = total_derivative(chart2, phi2, k)
            for l in range(n):
                if not xi_coeff[l].is_zero:
                    val = val - chart2.d3u(i, j, l) * total_derivative(
                        chart2, xi_coeff[l], k)
            if not val.is_zero:
                comps[chart2.jet3[(i, j, k)]] = val
        field = VectorField(chart2, comps)
    if verify:
        _verify_prolongation(chart2, field)
    return field


def _verify_prolongation(chart2, field):
    """The Lie derivative of every canonical form stays in their span."""
    span = [contact_form(chart2)] + second_order_contact_forms(chart2)
    if chart2.order >= 3:
        span += third_order_contact_forms(chart2)
    for form in span:
        ld = form.lie_derivative(field)
        if not in_contact_span(ld, span, chart2):
            raise AssertionError("prolongation does not preserve the "
                                 "canonical contact system")


def in_contact_span(form, span, chart):
    """Exact membership in a span of forms with triangular lead structure.

    Each spanning form is the unique one carrying a du / du_i / du_ij
    component, so the expansion coefficients are read off directly.
    """
    table = chart.table
    residual = form
    for s in span:
        lead_name = None
        for name in s.comps:
            if table.classes[table.index(name)] in (DEPENDENT, JET1, JET2):
                lead_name = name
                break
        c = residual.comps.get(lead_name)
        if c is None:
            continue
        lead = s.comps[lead_name]
        coef = as_ratfunc(c, table) / as_ratfunc(lead, table)
        residual = residual - s.scale(coef)
    return not residual.comps


# ---------------------------------------------------------------------------
# conformal-symplectic framings
# ---------------------------------------------------------------------------


class CSFraming:
    """Framing X_0..X_{n-1}, U^0..U^{n-1} of the contact distribution."""

    def __init__(self, chart, X, U):
        if len(X) != chart.n or len(U) != chart.n:
            raise ValueError("framing needs n X-fields and n U-fields")
        self.chart = chart
        self.X = list(X)
        self.U = list(U)

    def fields(self):
        return self.X + self.U

    def dsigma_pair(self, A, B):
        """d sigma(A, B) = sum_i A^{x_i} B^{u_i} - B^{x_i} A^{u_i}."""
        chart = self.chart
        out = None
        for i in range(chart.n):
            xi, ui = chart.base_names[i], chart.jet1_names[i]
            t = A.coeff(xi) * B.coeff(ui) - B.coeff(xi) * A.coeff(ui)
            out = t if out is None else out + t
        return chart.zero() if out is None else out

    def on_chart(self, chart):
        return CSFraming(chart, [chart.import_field(F) for F in self.X],
                         [chart.import_field(F) for F in self.U])


def standard_framing(chart):
    """X_i = d/dx^i + u_i d/du, U^i = d/du_i."""
    X = []
    U = []
    for i in range(chart.n):
        X.append(VectorField(chart, {chart.base_names[i]: chart.one(),
                                     "u": chart.du(i)}))
        U.append(VectorField(chart, {chart.jet1_names[i]: chart.one()}))
    return CSFraming(chart, X, U)


def check_cs_framing(framing):
    """Verify the conformal-symplectic framing conditions.

    Returns (ok, report) where report carries the conformal factor c, the
    transversal direction T = [U^0, X_0], and any failing pairs.
    """
    chart = framing.chart
    sigma = contact_form(chart)
    failures = []
    for idx, F in enumerate(framing.fields()):
        v = sigma.pair(F)
        if not v.is_zero:
            failures.append(("sigma", idx))
    n = chart.n
    c = None
    for i in range(n):
        for j in range(n):
            val = framing.dsigma_pair(framing.X[i], framing.X[j])
            if not val.is_zero:
                failures.append(("XX", (i, j)))
            val = framing.dsigma_pair(framing.U[i], framing.U[j])
            if not val.is_zero:
                failures.append(("UU", (i, j)))
            val = framing.dsigma_pair(framing.X[i], framing.U[j])
            if i == j:
                if c is None:
                    c = val
                elif not (as_ratfunc(val, chart.table) ==
                          as_ratfunc(c, chart.table)):
                    failures.append(("conformal-factor", (i, j)))
            elif not val.is_zero:
                failures.append(("XU", (i, j)))
    if c is None or c.is_zero:
        failures.append(("conformal-factor-zero", None))
    rank = _framing_rank(framing)
    if rank != 2 * n:
        failures.append(("rank", rank))
    T = framing.U[0].bracket(framing.X[0])
    report = {"c": c, "T": T, "failures": failures}
    return (not failures), report


def _framing_rank(framing):
    from .linalg import rank_polymat
    chart = framing.chart
    rows = []
    for F in framing.fields():
        rows.append([F.coeff(nm) for nm in chart.first_jet_names()])
    return rank_polymat(rows)


def expand_in_framing(framing, field):
    """Coefficients of a field in the framing plus the d/du direction.

    Returns (rho, mu, tau): field = rho^i X_i + mu_j U^j + tau d/du.
    Fast path when the framing is graph-like over the coordinate frame
    (dx^i-components only on X_i forming the identity, du_j-components of
    the U^j forming the identity), which covers the flat and the deformed
    framings used for the large algebras.
    """
    chart = framing.chart
    n = chart.n
    def _is_one(c):
        return isinstance(c, Poly) and c.is_constant() and c.constant() == 1

    fast = True
    for i in range(n):
        for j in range(n):
            cx = framing.X[i].coeff(chart.base_names[j])
            if (i == j and not _is_one(cx)) or (i != j and not cx.is_zero):
                fast = False
                break
            cu = framing.U[i].coeff(chart.jet1_names[j])
            if (i == j and not _is_one(cu)) or (i != j and not cu.is_zero):
                fast = False
                break
            if not framing.U[i].coeff(chart.base_names[j]).is_zero:
                fast = False
                break
        if not fast or not framing.U[i].coeff("u").is_zero:
            fast = False
            break
    if fast:
        rho = [field.coeff(chart.base_names[i]) for i in range(n)]
        rest = field
        for i in range(n):
            if not rho[i].is_zero:
                rest = rest - framing.X[i].scale(rho[i])
        mu = [rest.coeff(chart.jet1_names[j]) for j in range(n)]
        tau = rest.coeff("u")
        for j in range(n):
            if not mu[j].is_zero:
                rest = rest - framing.U[j].scale(mu[j])
        rest = rest - VectorField(chart, {"u": tau})
        if not rest.is_zero:
            raise ValueError("field does not lie in framing + d/du")
        return rho, mu, tau
    cols = framing.fields() + [VectorField(chart, {"u": chart.one()})]
    names = chart.first_jet_names()
    matrix = [[F.coeff(nm) for F in cols] for nm in names]
    rhs = [field.coeff(nm) for nm in names]
    sol = solve_field(matrix, rhs)
    return sol[:n], sol[n:2 * n], sol[2 * n]


def mobius(blocks, X, table):
    """(C + D X)(A + B X)^{-1} for the block matrix ((A, B), (C, D)).

    Entries may be Poly, RatFunc or scalars; X is symmetric over the
    function field.  Raises when A + B X is singular.
    """
    A, B, C, D = blocks
    n = len(X)

    def rf(e):
        return as_ratfunc(e, table) if not isinstance(e, (Poly, RatFunc)) \
            else as_ratfunc(e)

    AX = [[_sum([rf(A[i][j])] + [rf(B[i][k]) * rf(X[k][j]) for k in range(n)])
           for j in range(n)] for i in range(n)]
    CX = [[_sum([rf(C[i][j])] + [rf(D[i][k]) * rf(X[k][j]) for k in range(n)])
           for j in range(n)] for i in range(n)]
    try:
        inv = invert_matrix(AX)
    except ValueError:
        raise ValueError("frame change undefined at this jet") from None
    return mat_mul(CX, inv)
