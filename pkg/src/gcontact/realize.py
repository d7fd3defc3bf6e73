"""Lie algebras realized by generating functions on jet space.

The flat models for every covered simple type are assembled from closed-form
generating functions; the span is closed under the Lagrange bracket and the
structure constants are extracted exactly.  Simplicity evidence comes from
the Killing form; the contact grading is read off the ad-action of the
scaling element.
"""

from __future__ import annotations

import itertools
import json
import random

from .jets import Chart, lagrange
from .linalg import rank_qq
from .rings import QQ0, QQ1, qq

try:
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None


class GDescriptor:
    """Catalog data for one simple type: Jordan model, sizes, expectations."""

    def __init__(self, name, jordan_label, n, dim_g, submax, f0ss_dim,
                 zf0_dim, dim_oracle=None):
        self.name = name
        self.jordan_label = jordan_label
        self.n = n
        self.dim_g = dim_g
        self.submax = submax            # int or dict branch-name -> value
        self.f0ss_dim = f0ss_dim
        self.zf0_dim = zf0_dim
        self.dim_oracle = dim_oracle    # independent count for classical types

    def jordan(self):
        from .jordan import catalog_model
        return catalog_model(self.jordan_label)


def _so_dim(k):
    return k * (k - 1) // 2


def descriptor(name):
    """Descriptor by Lie-type name (G2, B3, B4, Bl:<l>, D4, D5, ..., E8)."""
    if name == "G2":
        return GDescriptor("G2", "J1", 2, 14, 7, 0, 1)
    if name == "D4":
        return GDescriptor("D4", "J3(0)", 4, 28, 15, 0, 3,
                           dim_oracle=4 * 7)  # so_8
    if name == "F4":
        return GDescriptor("F4", "J3(R)", 7, 52, 28, 8, 1)
    if name == "E6":
        return GDescriptor("E6", "J3(C)", 10, 78, 43, 16, 1)
    if name == "E7":
        return GDescriptor("E7", "J3(H)", 16, 133, 76, 35, 1)
    if name == "E8":
        return GDescriptor("E8", "J3(O)", 28, 248, 147, 78, 1)
    if name.startswith("B"):
        l = int(name[1:])
        if l < 3:
            raise ValueError("B-series needs l >= 3")
        m = 2 * l - 5
        sub = {"S21": 2 * l * l - 5 * l + 8,
               "S23": 11 if l == 3 else 2 * l * l - 7 * l + 15}
        return GDescriptor(name, "JS%d" % m, 2 * l - 3, l * (2 * l + 1), sub,
                           _so_dim(m) if m >= 3 else 0,
                           2 if m >= 3 else (3 if m == 2 else 2),
                           dim_oracle=l * (2 * l + 1))
    if name.startswith("D"):
        l = int(name[1:])
        if l < 5:
            raise ValueError("use D4 for l = 4; D-series needs l >= 5")
        m = 2 * l - 6
        sub = {"S21": 2 * l * l - 7 * l + 11, "S23": 2 * l * l - 9 * l + 19}
        return GDescriptor(name, "JS%d" % m, 2 * l - 4, l * (2 * l - 1), sub,
                           _so_dim(m), 2, dim_oracle=l * (2 * l - 1))
    raise ValueError("unknown Lie type %r" % name)


CATALOG = ("G2", "B3", "B4", "D4", "D5", "F4", "E6", "E7", "E8")


def flat_chart(desc_or_n, params=()):
    n = desc_or_n.n if isinstance(desc_or_n, GDescriptor) else desc_or_n
    return Chart(n, order=1, params=params)


# ---------------------------------------------------------------------------
# echelonized spans of polynomials with coordinate tracking
# ---------------------------------------------------------------------------


class SpanBasis:
    """Reduced row echelon span of polynomials over the rationals.

    Rows are kept fully reduced: a pivot monomial occurs in its own row
    only, so reduction of a new element is a single pass over its
    monomials.  Each row remembers its expression in the inserted
    generators, which yields exact coordinates for any member.
    """

    def __init__(self):
        self.rows = []       # list of (terms dict, coords dict)
        self.pivot_of = {}   # monomial -> row index
        self.occurs = {}     # monomial -> set of row indices

    @property
    def dim(self):
        return len(self.rows)

    def _normal_form(self, terms):
        out = dict(terms)
        coords = {}
        for mono in list(out):
            r = self.pivot_of.get(mono)
            if r is None:
                continue
            c = out.get(mono)
            if not c:
                continue
            rterms, rcoords = self.rows[r]
            fac = c / rterms[mono]
            for m2, c2 in rterms.items():
                v = out.get(m2, QQ0) - fac * c2
                if v:
                    out[m2] = v
                else:
                    out.pop(m2, None)
            for k, c2 in rcoords.items():
                v = coords.get(k, QQ0) + fac * c2
                if v:
                    coords[k] = v
                else:
                    coords.pop(k, None)
        return out, coords

    def coords_of(self, poly):
        """Coordinates in the inserted generators, or None if not a member."""
        out, coords = self._normal_form(poly.terms)
        if out:
            return None
        return coords

    def insert(self, poly, tag=None):
        """Insert generator; returns (is_new, coords-if-dependent)."""
        from .rings import _mono_key
        out, coords = self._normal_form(poly.terms)
        if not out:
            return False, coords
        pivot = max(out, key=_mono_key)
        idx = len(self.rows)
        tag = tag if tag is not None else idx
        # normalize pivot to 1
        lc = out[pivot]
        out = {m: c / lc for m, c in out.items()}
        mycoords = {k: -c / lc for k, c in coords.items()}
        mycoords[tag] = QQ1 / lc
        # eliminate the new pivot from existing rows
        for r in list(self.occurs.get(pivot, ())):
            rterms, rcoords = self.rows[r]
            fac = rterms[pivot]
            for m2, c2 in out.items():
                v = rterms.get(m2, QQ0) - fac * c2
                if v:
                    rterms[m2] = v
                    self.occurs.setdefault(m2, set()).add(r)
                else:
                    rterms.pop(m2, None)
                    if m2 in self.occurs:
                        self.occurs[m2].discard(r)
            for k, c2 in mycoords.items():
                v = rcoords.get(k, QQ0) - fac * c2
                if v:
                    rcoords[k] = v
                else:
                    rcoords.pop(k, None)
        self.rows.append((out, mycoords))
        self.pivot_of[pivot] = idx
        for m in out:
            self.occurs.setdefault(m, set()).add(idx)
        return True, None


# ---------------------------------------------------------------------------
# generating-function rows for the flat models
# ---------------------------------------------------------------------------


def top_slot(J, chart):
    """Highest-grade generating function.

    u(u - x^i u_i) - C(X^3) u_0 / 2 + C*(P^3) x^0 / 2
    + (9/4) C_a(X^2) (C*)^a(P^2), with X, P the Jordan blocks of x, u_i.
    """
    n = chart.n
    u = chart.u()
    zero = chart.zero()
    xw = [chart.x(a) for a in range(1, n)]
    pw = [chart.du(a) for a in range(1, n)]
    f = u * (u - sum((chart.x(i) * chart.du(i) for i in range(n)), zero))
    if n > 1:
        f = f - J.cubic(xw, zero) * chart.du(0) / 2
        f = f + J.dual(pw, zero) * chart.x(0) / 2
        gx = J.grad(xw, zero)
        gp = J.dual_grad(pw, zero)
        cross = sum((gx[a] * gp[a] for a in range(n - 1)), zero)
        f = f + cross * qq(9, 4)
    return f


def grading_element(chart):
    zero = chart.zero()
    return 2 * chart.u() - sum((chart.x(i) * chart.du(i)
                                for i in range(chart.n)), zero)


def flat_rows(J, chart):
    """Labeled generating functions spanning the flat symmetry algebra."""
    n = chart.n
    zero = chart.zero()
    u = chart.u()
    x = [chart.x(i) for i in range(n)]
    p = [chart.du(i) for i in range(n)]
    xw, pw = x[1:], p[1:]
    gx = J.grad(xw, zero)          # C_a(X^2)
    gp = J.dual_grad(pw, zero)     # (C*)^a(P^2)
    hx = J.hess(xw, zero)          # C_ab(X)
    hp = J.dual_hess(pw, zero)     # (C*)^ab(P)
    xu = sum((x[i] * p[i] for i in range(n)), zero)
    rows = [("1", -2, chart.one())]
    for i in range(n):
        rows.append(("x%d" % i, -1, x[i]))
    for i in range(n):
        rows.append(("u%d" % i, -1, p[i]))
    rows.append(("Z", 0, 2 * u - xu))
    rows.append(("Z0", 0, qq(3, 2) * x[0] * p[0]
                 + sum((x[a] * p[a] for a in range(1, n)), zero) / 2))
    for a in range(n - 1):
        for b in range(n - 1):
            psi = x[a + 1] * p[b + 1] - 9 * sum(
                (hx[b][c] * hp[a][c] for c in range(n - 1)), zero)
            if a == b:
                psi = psi + sum((x[c] * p[c] for c in range(1, n)), zero) / 3
            rows.append(("psi_%d_%d" % (a + 1, b + 1), 0, psi))
    for a in range(n - 1):
        rows.append(("fplus%d" % (a + 1), 0,
                     x[a + 1] * p[0] - qq(3, 2) * gp[a]))
        rows.append(("fminus%d" % (a + 1), 0,
                     p[a + 1] * x[0] + qq(3, 2) * gx[a]))
    cx = J.cubic(xw, zero)
    cp = J.dual(pw, zero)
    rows.append(("g1_x0", 1, x[0] * (u - xu) - cx / 2))
    for a in range(n - 1):
        val = x[a + 1] * (u - xu) + qq(3, 2) * gp[a] * x[0] + qq(9, 2) * sum(
            (gx[b] * hp[a][b] for b in range(n - 1)), zero)
        rows.append(("g1_x%d" % (a + 1), 1, val))
    rows.append(("g1_u0", 1, u * p[0] - cp / 2))
    for a in range(n - 1):
        val = u * p[a + 1] + qq(3, 2) * gx[a] * p[0] - qq(9, 2) * sum(
            (hx[a][b] * gp[b] for b in range(n - 1)), zero)
        rows.append(("g1_u%d" % (a + 1), 1, val))
    rows.append(("top", 2, top_slot(J, chart)))
    return rows


# ---------------------------------------------------------------------------
# realizations
# ---------------------------------------------------------------------------


class LieRealization:
    """Finite-dimensional Lie algebra of generating functions.

    Holds the chosen basis, grading labels, provenance tags, and (lazily)
    the exact structure constants with closure verified at polynomial
    level.
    """

    def __init__(self, chart, basis, labels, grades, grading_elt=None,
                 name=""):
        self.chart = chart
        self.basis = list(basis)
        self.labels = list(labels)
        self.grades = list(grades)
        self.name = name
        self.grading_elt = grading_elt
        self._span = SpanBasis()
        for i, b in enumerate(self.basis):
            new, _ = self._span.insert(b, i)
            if not new:
                raise ValueError("basis element %d is dependent" % i)
        self._sc = None
        self._deriv_cache = {}

    @property
    def dim(self):
        return len(self.basis)

    # -- brackets ----------------------------------------------------------

    def _derivs(self, i):
        d = self._deriv_cache.get(i)
        if d is None:
            chart, f = self.chart, self.basis[i]
            fu = f.derive("u")
            dx = []
            du = []
            for k in range(chart.n):
                dx.append(f.derive(chart.base_names[k]) + chart.du(k) * fu)
                du.append(f.derive(chart.jet1_names[k]))
            d = (fu, dx, du)
            self._deriv_cache[i] = d
        return d

    def bracket(self, i, j):
        f, g = self.basis[i], self.basis[j]
        fu, fdx, fdu = self._derivs(i)
        gu, gdx, gdu = self._derivs(j)
        out = f * gu - g * fu
        for k in range(self.chart.n):
            if not gdu[k].is_zero:
                out = out + fdx[k] * gdu[k]
            if not fdu[k].is_zero:
                out = out - gdx[k] * fdu[k]
        return out

    def structure_constants(self):
        """dict (i, j) i<j -> sparse coordinate dict; closure is exact."""
        if self._sc is not None:
            return self._sc
        sc = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                br = self.bracket(i, j)
                if br.is_zero:
                    continue
                coords = self._span.coords_of(br)
                if coords is None:
                    raise ValueError(
                        "bracket [%s, %s] escapes the span"
                        % (self.labels[i], self.labels[j]))
                sc[(i, j)] = coords
        self._sc = sc
        return sc

    def coords_of(self, f):
        return self._span.coords_of(f)

    def contains(self, f):
        return self._span.coords_of(f) is not None

    # -- verification ------------------------------------------------------

    def grading_report(self):
        """dims per ad(Z)-eigenvalue; verifies the eigenvector property."""
        Z = self.grading_elt
        if Z is None:
            raise ValueError("no grading element recorded")
        dims = {}
        for i, f in enumerate(self.basis):
            br = lagrange(self.chart, Z, f)
            expect = f * qq(self.grades[i])
            if not (br - expect).is_zero:
                raise AssertionError("basis element %s is not an ad-"
                                     "eigenvector of weight %d"
                                     % (self.labels[i], self.grades[i]))
            dims[self.grades[i]] = dims.get(self.grades[i], 0) + 1
        return dict(sorted(dims.items()))

    def jacobi_structure_constants(self):
        """[ad_i, ad_j] = ad_{[i,j]} as exact integer matrix identities."""
        sc = self.structure_constants()
        dim = self.dim
        den = 1
        from gmpy2 import gcd as igcd
        for coords in sc.values():
            for c in coords.values():
                den = den * c.denominator // igcd(den, c.denominator)
        ads = [
            _np.zeros((dim, dim), dtype=_np.float64) for _ in range(dim)]
        maxabs = 0
        for (i, j), coords in sc.items():
            for m, c in coords.items():
                v = int(c.numerator * (den // c.denominator))
                maxabs = max(maxabs, abs(v))
                ads[i][m, j] = v
                ads[j][m, i] = -v
        # float64 matmul is exact while every value stays below 2^53
        assert dim * maxabs * maxabs < 2 ** 53, "scaled constants too large"
        for i in range(dim):
            for j in range(i + 1, dim):
                lhs = ads[i] @ ads[j] - ads[j] @ ads[i]
                rhs = _np.zeros((dim, dim))
                for m, c in sc.get((i, j), {}).items():
                    v = int(c.numerator * (den // c.denominator))
                    rhs += v * ads[m]
                # both sides carry the scale den^2 and stay below 2^53
                if not _np.array_equal(lhs, rhs):
                    return False
        return True

    def jacobi_polynomial(self, sample=None, seed=0):
        """[[f,g],h] + cyclic = 0 at polynomial level.

        sample = None checks every triple; an integer draws that many
        triples with the given seed.
        """
        dim = self.dim
        triples = itertools.combinations(range(dim), 3)
        if sample is not None:
            rng = random.Random(seed)
            pool = []
            for _ in range(sample):
                pool.append(tuple(sorted(rng.sample(range(dim), 3))))
            triples = pool
        for (i, j, k) in triples:
            fij = self.bracket(i, j)
            fjk = self.bracket(j, k)
            fki = self.bracket(k, i)
            acc = lagrange(self.chart, fij, self.basis[k]) \
                + lagrange(self.chart, fjk, self.basis[i]) \
                + lagrange(self.chart, fki, self.basis[j])
            if not acc.is_zero:
                return False
        return True

    def killing_rank(self):
        """Rank of the Killing form built from the structure constants."""
        sc = self.structure_constants()
        dim = self.dim

        def c_get(i, j):
            if i == j:
                return {}
            if i < j:
                return sc.get((i, j), {})
            return {m: -v for m, v in sc.get((j, i), {}).items()}

        ad = [dict() for _ in range(dim)]   # ad[i]: column j -> dict row->c
        for i in range(dim):
            col = {}
            for j in range(dim):
                e = c_get(i, j)
                if e:
                    col[j] = e
            ad[i] = col
        rows = []
        for i in range(dim):
            row = {}
            for j in range(dim):
                if self.grades and self.grades[i] + self.grades[j] != 0:
                    continue
                s = QQ0
                for m, cim in ad[i].items():
                    adj = ad[j]
                    for l, c1 in cim.items():
                        got = adj.get(l)
                        if got:
                            c2 = got.get(m)
                            if c2:
                                s = s + c1 * c2
                if s:
                    row[j] = s
            rows.append(row)
        return rank_qq(rows, dim)

    # -- export --------------------------------------------------------------

    def to_json(self):
        sc = self.structure_constants()
        data = {
            "name": self.name,
            "dim": self.dim,
            "labels": self.labels,
            "grades": self.grades,
            "generators": [str(b) for b in self.basis],
            "structure_constants": [
                [i, j, [[m, str(c)] for m, c in sorted(coords.items())]]
                for (i, j), coords in sorted(sc.items())],
        }
        return json.dumps(data, indent=1, sort_keys=True)

    def to_latex(self):
        from .emit import poly_latex
        lines = ["\\begin{align*}"]
        for lab, g, b in zip(self.labels, self.grades, self.basis):
            lines.append("%s &\\colon %s \\\\" % (lab.replace("_", ""),
                                                  poly_latex(b)))
        lines.append("\\end{align*}")
        return "\n".join(lines)


def flat_realization(J, expected_dim=None, name=""):
    """Flat realization straight from a Jordan model with dual cubic."""
    chart = flat_chart(J.n)
    rows = flat_rows(J, chart)
    span = SpanBasis()
    basis, labels, grades = [], [], []
    for lab, grade, f in rows:
        if f.is_zero:
            continue
        new, _ = span.insert(f, len(basis))
        if new:
            basis.append(f)
            labels.append(lab)
            grades.append(grade)
    if expected_dim is not None and len(basis) != expected_dim:
        raise ValueError("dimension mismatch for %s: got %d, expected %d"
                         % (name, len(basis), expected_dim))
    return LieRealization(chart, basis, labels, grades,
                          grading_elt=grading_element(chart), name=name)


def flat_generators(desc):
    """Flat realization for a catalog descriptor; dimension is enforced."""
    return flat_realization(desc.jordan(), desc.dim_g, desc.name)


def close_under_bracket(chart, seeds, cap=2000, name="closure"):
    """Saturate the span of the seeds under the Lagrange bracket."""
    span = SpanBasis()
    basis = []
    for f in seeds:
        f = chart.import_poly(f)
        new, _ = span.insert(f, len(basis))
        if new:
            basis.append(f)
    frontier = list(range(len(basis)))
    while frontier:
        if len(basis) > cap:
            raise ValueError("closure exceeded cap %d" % cap)
        new_frontier = []
        for i in frontier:
            for j in range(len(basis)):
                br = lagrange(chart, basis[i], basis[j])
                if br.is_zero:
                    continue
                new, _ = span.insert(br, len(basis))
                if new:
                    basis.append(br)
                    new_frontier.append(len(basis) - 1)
        frontier = new_frontier
    return basis


def realization_from_basis(chart, basis, grading_elt, name=""):
    """Wrap an explicit basis, computing grades from the ad-action."""
    grades = []
    for f in basis:
        br = lagrange(chart, grading_elt, f)
        if br.is_zero:
            grades.append(0)
            continue
        found = None
        for k in range(-3, 4):
            if (br - f * qq(k)).is_zero:
                found = k
                break
        if found is None:
            raise ValueError("basis element is not an ad-eigenvector")
        grades.append(found)
    return LieRealization(chart, basis, ["e%d" % i for i in range(len(basis))],
                          grades, grading_elt=grading_elt, name=name)


# ---------------------------------------------------------------------------
# degenerate type A and C flat models
# ---------------------------------------------------------------------------


def typeA_flat(n):
    """Point-symmetry algebra of the vanishing complete second-order system."""
    if n < 2:
        raise ValueError("need n >= 2")
    chart = Chart(n)
    zero = chart.zero()
    u = chart.u()
    x = [chart.x(i) for i in range(n)]
    p = [chart.du(i) for i in range(n)]
    xu = sum((x[i] * p[i] for i in range(n)), zero)
    basis, labels, grades = [], [], []

    def add(lab, g, f):
        basis.append(f)
        labels.append(lab)
        grades.append(g)

    add("1", -2, chart.one())
    for i in range(n):
        add("x%d" % i, -1, x[i])
    for i in range(n):
        add("u%d" % i, -1, p[i])
    add("Z", 0, 2 * u - xu)
    for i in range(n):
        for j in range(n):
            add("x%d*u%d" % (i, j), 0, x[i] * p[j])
    for i in range(n):
        add("u*u%d" % i, 1, u * p[i])
    for i in range(n):
        add("x%d*(u-xu)" % i, 1, x[i] * (u - xu))
    add("top", 2, u * (u - xu))
    expected = (n + 2) ** 2 - 1
    real = LieRealization(chart, basis, labels, grades,
                          grading_elt=2 * u - xu, name="A%d" % (n + 1))
    if real.dim != expected:
        raise ValueError("type A dimension mismatch")
    return real


def typeC_flat(n):
    """Contact-symmetry algebra of the vanishing complete third-order system."""
    if n < 2:
        raise ValueError("need n >= 2")
    chart = Chart(n)
    zero = chart.zero()
    u = chart.u()
    x = [chart.x(i) for i in range(n)]
    p = [chart.du(i) for i in range(n)]
    xu = sum((x[i] * p[i] for i in range(n)), zero)
    w = xu - 2 * u
    basis, labels, grades = [], [], []

    def add(lab, g, f):
        basis.append(f)
        labels.append(lab)
        grades.append(g)

    add("1", -3, chart.one())
    for i in range(n):
        add("x%d" % i, -2, x[i])
    for i in range(n):
        add("u%d" % i, -1, p[i])
    for i in range(n):
        for j in range(i, n):
            add("x%d*x%d" % (i, j), -1, x[i] * x[j])
    add("u", 0, u)
    for i in range(n):
        for j in range(n):
            add("x%d*u%d" % (i, j), 0, x[i] * p[j])
    for i in range(n):
        add("x%d*w" % i, 1, x[i] * w)
    for i in range(n):
        for j in range(i, n):
            add("u%d*u%d" % (i, j), 1, p[i] * p[j])
    for i in range(n):
        add("u%d*w" % i, 2, p[i] * w)
    add("w^2", 3, w * w)
    expected = (n + 1) * (2 * n + 3)
    real = LieRealization(chart, basis, labels, grades,
                          grading_elt=3 * u - xu, name="C%d" % (n + 1))
    if real.dim != expected:
        raise ValueError("type C dimension mismatch")
    return real


# ---------------------------------------------------------------------------
# structure of the degree-zero part
# ---------------------------------------------------------------------------


def f0_report(desc):
    """Closure and size of the psi-span and its center, against the catalog.

    Returns a dict with the computed dimensions and pass flags.
    """
    J = desc.jordan()
    chart = flat_chart(desc)
    rows = flat_rows(J, chart)
    psis = [f for lab, g, f in rows if lab.startswith("psi") and not f.is_zero]
    z0 = [f for lab, g, f in rows if lab == "Z0"][0]
    span = SpanBasis()
    psi_basis = []
    for f in psis:
        new, _ = span.insert(f, len(psi_basis))
        if new:
            psi_basis.append(f)
    closed = True
    for i in range(len(psi_basis)):
        for j in range(i + 1, len(psi_basis)):
            br = lagrange(chart, psi_basis[i], psi_basis[j])
            if br.is_zero:
                continue
            if span.coords_of(br) is None:
                closed = False
    # f0 = psi-span + Z0; derived algebra and center computed exactly
    f0_span = SpanBasis()
    f0_basis = []
    for f in psi_basis + [z0]:
        new, _ = f0_span.insert(f, len(f0_basis))
        if new:
            f0_basis.append(f)
    der_span = SpanBasis()
    der_dim = 0
    brackets = {}
    for i in range(len(f0_basis)):
        for j in range(i + 1, len(f0_basis)):
            br = lagrange(chart, f0_basis[i], f0_basis[j])
            brackets[(i, j)] = br
            if not br.is_zero:
                new, _ = der_span.insert(br, der_dim)
                if new:
                    der_dim += 1
    # center = kernel of c -> [sum_i c_i e_i, e_j] for all j
    k = len(f0_basis)
    eqs = {}
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            a, b = min(i, j), max(i, j)
            br = brackets[(a, b)]
            if br.is_zero:
                continue
            sgn = QQ1 if (i, j) == (a, b) else -QQ1
            for mono, cval in br.terms.items():
                key = (j, mono)
                eqs.setdefault(key, {})[i] = eqs.get(key, {}).get(i, QQ0) \
                    + sgn * cval
    from .linalg import nullspace
    sys_rows = [r for r in eqs.values() if r]
    center = nullspace(sys_rows, k)
    zdim = len(center)
    return {
        "psi_closed": closed,
        "f0_dim": len(f0_basis),
        "f0ss_dim": der_dim,
        "zf0_dim": zdim,
        "f0ss_expected": desc.f0ss_dim,
        "zf0_expected": desc.zf0_dim,
        "ok": closed and der_dim == desc.f0ss_dim and zdim == desc.zf0_dim,
    }


def spin_f0_span_matches(desc):
    """For spin factors with m >= 3 the derived f0 equals the rotation span."""
    J = desc.jordan()
    m = J.dimW - 1
    if m < 3:
        raise ValueError("rotation span needs m >= 3")
    chart = flat_chart(desc)
    rows = flat_rows(J, chart)
    psis = [f for lab, g, f in rows if lab.startswith("psi")]
    span = SpanBasis()
    cnt = 0
    for f in psis:
        new, _ = span.insert(f, cnt)
        if new:
            cnt += 1
    # rotations x^a u_b - x_b u^a in the adapted pairing a' = m+1-a
    rot_span = SpanBasis()
    rot = []
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            f = chart.x(a) * chart.du(b) \
                - chart.x(m + 1 - b) * chart.du(m + 1 - a)
            if f.is_zero:
                continue
            new, _ = rot_span.insert(f, len(rot))
            if new:
                rot.append(f)
    if len(rot) != _so_dim(m):
        return False
    # each rotation must lie in the psi-span and brackets must close
    for f in rot:
        if span.coords_of(f) is None:
            return False
    return True


def f4_sl3_homomorphism_check():
    """The explicit identification of the psi-span with sl3 for the 52-dim
    algebra: verify the recorded map is an isomorphism of Lie algebras."""
    desc = descriptor("F4")
    J = desc.jordan()
    chart = flat_chart(desc)
    zero = chart.zero()
    x = [None] + [chart.x(a) for a in range(1, 7)]
    p = [None] + [chart.du(a) for a in range(1, 7)]
    # images of the matrix units under the recorded identification
    images = {
        (1, 2): 2 * x[5] * p[1] + x[6] * p[4] + x[3] * p[5],
        (2, 1): x[1] * p[5] + x[4] * p[6] + 2 * x[5] * p[3],
        (2, 3): x[4] * p[5] + x[2] * p[6] + 2 * x[6] * p[3],
        (3, 2): x[5] * p[4] + 2 * x[6] * p[2] + x[3] * p[6],
        (1, 3): 2 * x[4] * p[1] + x[2] * p[4] + x[6] * p[5],
        (3, 1): x[1] * p[4] + 2 * x[4] * p[2] + x[5] * p[6],
    }
    h1 = qq(4, 3) * x[1] * p[1] - qq(2, 3) * (x[2] * p[2] + x[3] * p[3]) \
        + (x[4] * p[4] + x[5] * p[5]) / 3 - qq(2, 3) * x[6] * p[6]
    h2 = qq(2, 3) * x[1] * p[1] - qq(4, 3) * x[2] * p[2] \
        + qq(2, 3) * x[3] * p[3] - x[4] * p[4] / 3 \
        + qq(2, 3) * x[5] * p[5] - x[6] * p[6] / 3

    def phi(mat):
        # mat: 3x3 rational matrix, traceless;
        # h1 <-> diag(2/3,-1/3,-1/3), h2 <-> diag(1/3,1/3,-2/3):
        # diag(d1,d2,d3) = a*diag1 + b*diag2 with a = d1-d2, b = d1+2*d2
        d1, d2 = mat[0][0], mat[1][1]
        a = d1 - d2
        b = d1 + 2 * d2
        out = zero + a * h1 + b * h2
        for (i, j), f in images.items():
            out = out + mat[i - 1][j - 1] * f
        return out

    def comm(A, B):
        return [[sum(A[i][k] * B[k][j] - B[i][k] * A[k][j] for k in range(3))
                 for j in range(3)] for i in range(3)]

    import itertools as it
    units = []
    for i, j in it.product(range(3), repeat=2):
        m = [[qq(0)] * 3 for _ in range(3)]
        if i == j:
            if i == 2:
                continue
            m[i][i] = qq(1)
            m[2][2] = qq(-1)
        else:
            m[i][j] = qq(1)
        units.append(m)
    for A in units:
        for B in units:
            lhs = lagrange(chart, phi(A), phi(B))
            rhs = phi(comm(A, B))
            if not (lhs - rhs).is_zero:
                return False
    # injectivity: images are linearly independent
    span = SpanBasis()
    cnt = 0
    for m in units:
        new, _ = span.insert(phi(m), cnt)
        if new:
            cnt += 1
    return cnt == 8
