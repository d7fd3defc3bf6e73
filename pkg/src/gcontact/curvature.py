"""Harmonic-curvature computations.

For plane (n = 2) contact structures the complete flatness obstruction is
a weighted binary septic assembled from five frame brackets; its root
multiplicities classify the non-flat structures.  For the degenerate
A- and C-type geometries the obstructions are torsions and a curvature of
complete second/third-order systems, computed by trace-free projections
of derivative tensors.
"""

from __future__ import annotations

import itertools

from .jets import Chart, VectorField, check_cs_framing, expand_in_framing
from .rings import (PARAMETER, Poly, RatFunc, as_ratfunc, poly_lcm,
                    qq, squarefree_binary)


class BinarySeptic:
    """Degree-7 form in formal (r, s) with function coefficients.

    coeffs[k] multiplies r^(7-k) s^k.
    """

    def __init__(self, chart, coeffs):
        if len(coeffs) != 8:
            raise ValueError("a binary septic has 8 coefficients")
        self.chart = chart
        self.coeffs = [as_ratfunc(c, chart.table) for c in coeffs]

    @property
    def is_zero(self):
        return all(c.is_zero for c in self.coeffs)

    def as_form(self):
        """Clear denominators into a Poly in (r, s) over the chart table."""
        T = self.chart.table
        if "r" not in T:
            T = T.extend([("r", PARAMETER), ("s", PARAMETER)])
        den = None
        for c in self.coeffs:
            den = c.den if den is None else poly_lcm(den, c.den)
        r, s = T.var("r"), T.var("s")
        out = T.zero()
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            num = c.num * den.divexact(c.den)
            out = out + num.lift(T) * r ** (7 - k) * s ** k
        return out, T

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            parts.append("(%s)*r^%d*s^%d" % (c, 7 - k, k))
        return " + ".join(parts) if parts else "0"


def g2_kappa(J, framing):
    """Harmonic curvature of a plane contact structure, up to a constant.

    Builds the sl2-adapted frame E_0 = X_0, E_1 = -X_1, E_2 = -U^1/2,
    E_3 = -U^0/6, takes the five trace-free bracket combinations, expands
    each in the frame and multiplies by the matching degree-4 monomials.
    Raises when the framing is not conformal-symplectic or a bracket
    leaves the contact distribution.
    """
    chart = framing.chart
    if chart.n != 2:
        raise ValueError("the septic curvature needs n = 2")
    ok, rep = check_cs_framing(framing)
    if not ok:
        raise ValueError("framing fails the conformal-symplectic "
                         "conditions: %s" % rep["failures"])
    E = [framing.X[0], framing.X[1].scale(-1), framing.U[1].scale(qq(-1, 2)),
         framing.U[0].scale(qq(-1, 6))]
    combos = [
        E[2].bracket(E[3]),
        E[3].bracket(E[1]),
        E[0].bracket(E[3]).scale(3) + E[1].bracket(E[2]),
        E[2].bracket(E[0]),
        E[0].bracket(E[1]),
    ]
    weights = [qq(1), qq(2), qq(1), qq(2), qq(1)]
    coeffs = [RatFunc.wrap(chart.zero()) for _ in range(8)]
    for idx, (B, w) in enumerate(zip(combos, weights)):
        rho, mu, tau = expand_in_framing(framing, B)
        if not tau.is_zero:
            raise ValueError("bracket combination %d leaves the contact "
                             "distribution" % idx)
        # components in the E-frame: Y = r0 E0 + r1 E1 + r2 E2 + r3 E3
        r0 = as_ratfunc(rho[0], chart.table)
        r1 = -as_ratfunc(rho[1], chart.table)
        r2 = -2 * as_ratfunc(mu[1], chart.table)
        r3 = -6 * as_ratfunc(mu[0], chart.table)
        # rho(Y) = r^3 r0 + 3 r^2 s r1 + 3 r s^2 r2 + s^3 r3, placed at
        # r^(4-idx) s^idx
        cubic = [r0, 3 * r1, 3 * r2, r3]
        for pos, c in enumerate(cubic):
            coeffs[idx + pos] = coeffs[idx + pos] + w * c
    return BinarySeptic(chart, coeffs)


def root_type(septic):
    """Multiplicity partition of a nonzero septic (infinity included)."""
    if septic.is_zero:
        raise ValueError("flat structure: no root type")
    form, T = septic.as_form()
    _, partition = squarefree_binary(form, "r", "s")
    return partition


def symmetry_bound_for_root_type(partition):
    """Sharp upper bounds on the symmetry dimension by root multiplicity."""
    if partition == [7]:
        return 7
    if partition in ([6, 1], [5, 2], [4, 3]):
        return 6
    if len(partition) >= 3:
        return 5
    return 14


# ---------------------------------------------------------------------------
# degenerate type A: complete second-order systems u_ij = f_ij(x, u, u_k)
# ---------------------------------------------------------------------------


def _pairs(n):
    return list(itertools.combinations_with_replacement(range(n), 2))


def typeA_tau_E(chart2, rhs):
    """Integrability obstruction of the horizontal bundle: the vertical
    components of [d~_i, d~_j]."""
    n = chart2.n
    fields = []
    for i in range(n):
        comps = {chart2.base_names[i]: chart2.one(), "u": chart2.du(i)}
        for j in range(n):
            comps[chart2.jet1_names[j]] = rhs[tuple(sorted((i, j)))]
        fields.append(VectorField(chart2, comps))
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            br = fields[i].bracket(fields[j])
            for k in range(n):
                c = br.coeff(chart2.jet1_names[k])
                if not c.is_zero:
                    out[(i, j, k)] = c
    return out


def typeA_curvature(chart2, rhs):
    """Trace-free second vertical derivatives of the right-hand sides.

    W^{kl}_{ij} = trfr(d^2 f_ij / du_k du_l); the projection removes all
    contractions between the upper and lower symmetric pairs.
    """
    n = chart2.n
    R = {}
    for (i, j) in _pairs(n):
        f = rhs[(i, j)]
        for (k, l) in _pairs(n):
            d = f.derive(chart2.jet1_names[k]).derive(chart2.jet1_names[l])
            if not d.is_zero:
                R[(i, j, k, l)] = d

    def Rget(i, j, k, l):
        return R.get((min(i, j), max(i, j), min(k, l), max(k, l)),
                     chart2.zero())

    S = {}
    for j in range(n):
        for l in range(n):
            acc = chart2.zero()
            for r in range(n):
                acc = acc + Rget(r, j, r, l)
            S[(j, l)] = acc
    T0 = sum((S[(r, r)] for r in range(n)), chart2.zero())
    W = {}
    for (i, j) in _pairs(n):
        for (k, l) in _pairs(n):
            val = Rget(i, j, k, l)
            corr = chart2.zero()
            for (a, b) in ((i, j), (j, i)):
                for (c, d) in ((k, l), (l, k)):
                    if a == c:
                        corr = corr + S[(b, d)]
            val = val - corr * qq(1, n + 2)
            dd = 0
            for (a, b) in ((i, j), (j, i)):
                for (c, d) in ((k, l), (l, k)):
                    if a == c and b == d:
                        dd += 1
            if dd:
                val = val + T0 * qq(dd, 2 * (n + 1) * (n + 2))
            if not val.is_zero:
                W[(i, j, k, l)] = val
    return W


def typeA_invariants(n, rhs_exprs):
    """Flags (tau_E, tau_F, W) for a complete second-order system.

    tau_F vanishes identically in this parametrization (the vertical
    bundle is integrable by construction).
    """
    chart2 = Chart(n, order=2)
    rhs = {}
    for (i, j) in _pairs(n):
        val = rhs_exprs.get((i, j), chart2.zero())
        rhs[(i, j)] = chart2.import_poly(val) if isinstance(val, Poly) else \
            chart2.const(val)
    tauE = typeA_tau_E(chart2, rhs)
    W = typeA_curvature(chart2, rhs)
    return {"tau_E": bool(tauE), "tau_F": False, "W": bool(W),
            "chart": chart2, "rhs": rhs}


# ---------------------------------------------------------------------------
# degenerate type C: complete third-order systems u_ijk = f_ijk
# ---------------------------------------------------------------------------


def _triples(n):
    return list(itertools.combinations_with_replacement(range(n), 3))


def typeC_horizontal_fields(chart2, rhs):
    """d~_i = d/dx^i + u_i d/du + u_ij d/du_j + f_ijk d/du_jk."""
    n = chart2.n
    fields = []
    for i in range(n):
        comps = {chart2.base_names[i]: chart2.one(), "u": chart2.du(i)}
        for j in range(n):
            comps[chart2.jet1_names[j]] = chart2.d2u(i, j)
        for (j, k) in _pairs(n):
            comps[chart2.jet2[(j, k)]] = rhs[tuple(sorted((i, j, k)))]
        fields.append(VectorField(chart2, comps))
    return fields


def typeC_torsions(n, rhs_exprs):
    """The two torsion components of a complete third-order system.

    tau_E: projection of [d~_l, d~_m] onto the Cartan product (full skew
    part in the first three indices removed).  tau_EV: trace-free part of
    d f_ijk / d u_lm via the displayed constants 6/(n+3) and
    6/((n+2)(n+3)).  Right-hand sides must be given on sorted triples.
    """
    chart2 = Chart(n, order=2)
    for key in rhs_exprs:
        if tuple(sorted(key)) != tuple(key):
            raise ValueError("right-hand sides must use sorted indices")
    rhs = {}
    for key in _triples(n):
        val = rhs_exprs.get(key, chart2.zero())
        rhs[key] = chart2.import_poly(val) if isinstance(val, Poly) else \
            chart2.const(val)
    fields = typeC_horizontal_fields(chart2, rhs)
    T = {}
    for l in range(n):
        for m in range(n):
            if l == m:
                continue
            br = fields[l].bracket(fields[m])
            for (j, k) in _pairs(n):
                # vertical components d~_l(f_mjk) - d~_m(f_ljk)
                T[(l, m, j, k)] = br.coeff(chart2.jet2[(j, k)])

    def Tget(l, m, j, k):
        if l == m:
            return chart2.zero()
        return T.get((l, m, min(j, k), max(j, k)), chart2.zero())

    tauE = {}
    for l in range(n):
        for m in range(n):
            for (j, k) in _pairs(n):
                val = Tget(l, m, j, k)
                # subtract the full antisymmetrization over (l, m, j)
                skew = chart2.zero()
                for perm, sgn in _signed_perms3():
                    a, b, c = perm((l, m, j))
                    skew = skew + Tget(a, b, c, k) * sgn
                val = val - skew / 6
                if not val.is_zero:
                    tauE[(l, m, j, k)] = val
    # vertical derivative tensor with the symmetric-derivative convention
    R = {}
    for key in _triples(n):
        f = rhs[key]
        for (l, m) in _pairs(n):
            d = f.derive(chart2.jet2[(l, m)])
            if d.is_zero:
                continue
            R[key + (l, m)] = d if l == m else d / 2

    def Rget(i, j, k, l, m):
        key = tuple(sorted((i, j, k))) + (min(l, m), max(l, m))
        return R.get(key, chart2.zero())

    S = {}
    for m in range(n):
        for (j, k) in itertools.product(range(n), repeat=2):
            acc = chart2.zero()
            for r in range(n):
                acc = acc + Rget(r, j, k, r, m)
            S[(m, j, k)] = acc
    Tv = {}
    for k in range(n):
        acc = chart2.zero()
        for r in range(n):
            acc = acc + S[(r, r, k)]
        Tv[k] = acc
    tauEV = {}
    for (i, j, k) in _triples(n):
        for (l, m) in _pairs(n):
            val = Rget(i, j, k, l, m)
            corr = chart2.zero()
            for (lm1, lm2) in ((l, m), (m, l)):
                for low in set(itertools.permutations((i, j, k))):
                    if lm1 == low[0]:
                        corr = corr + S[(lm2, low[1], low[2])] * \
                            qq(1, len(set(itertools.permutations((i, j, k)))))
            val = val - corr * qq(6, 2 * (n + 3))
            corr2 = chart2.zero()
            for (lm1, lm2) in ((l, m), (m, l)):
                for low in set(itertools.permutations((i, j, k))):
                    if lm1 == low[0] and lm2 == low[1]:
                        corr2 = corr2 + Tv[low[2]] * \
                            qq(1, len(set(itertools.permutations((i, j, k)))))
            val = val + corr2 * qq(6, 2 * (n + 2) * (n + 3))
            if not val.is_zero:
                tauEV[(i, j, k, l, m)] = val
    return {"tau_E": tauE, "tau_EV": tauEV,
            "tau_E_zero": not tauE, "tau_EV_zero": not tauEV,
            "chart": chart2, "rhs": rhs}


def _signed_perms3():
    perms = []
    for sigma, sgn in (
        ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
        ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1),
    ):
        def mk(sig):
            return lambda t: (t[sig[0]], t[sig[1]], t[sig[2]])
        perms.append((mk(sigma), qq(sgn)))
    return perms
