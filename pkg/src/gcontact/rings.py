"""Exact scalar, sparse polynomial and rational-function arithmetic.

Everything downstream works over the field of rationals: no floating point
appears anywhere in this package.  Polynomials are sparse dictionaries
mapping monomials to nonzero rational coefficients.  A monomial is a tuple
of (variable_index, exponent) pairs sorted by index; ordinary variables
carry nonnegative exponents, while declared exponential generators (formal
symbols like e^x whose derivative is a rational multiple of themselves) may
carry any integer exponent.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    from fractions import Fraction as _mpq


def qq(a, b=None):
    """Exact rational scalar."""
    if b is None:
        return _mpq(a)
    return _mpq(a, b)


QQ0 = qq(0)
QQ1 = qq(1)

# variable classes
BASE = "base"
DEPENDENT = "dependent"
JET1 = "jet1"
JET2 = "jet2"
JET3 = "jet3"
PARAMETER = "parameter"
EXPONENTIAL = "exponential"

_CLASSES = (BASE, DEPENDENT, JET1, JET2, JET3, PARAMETER, EXPONENTIAL)

_DEFAULT_WEIGHT = {BASE: 1, DEPENDENT: 2, JET1: 1, JET2: 0, JET3: 0,
                   PARAMETER: 0, EXPONENTIAL: 0}


class VarTable:
    """Ordered table of named variables.

    Each entry carries a class, an integer weight (weighted degree +1 for
    base and first-jet variables, +2 for the dependent variable), and, for
    exponential generators, a derivation row: a map base-variable ->
    rational c meaning d/d(base) E = c*E.
    """

    def __init__(self, entries):
        self.names = []
        self.classes = []
        self.weights = []
        self.derivations = []  # per var: None or dict index->QQ
        self._index = {}
        self._pending = []
        for e in entries:
            self._add(e)
        self._resolve()

    def _add(self, entry):
        name, klass = entry[0], entry[1]
        weight = entry[2] if len(entry) > 2 else _DEFAULT_WEIGHT[klass]
        deriv = entry[3] if len(entry) > 3 else None
        if klass not in _CLASSES:
            raise ValueError("unknown variable class %r" % (klass,))
        if name in self._index:
            raise ValueError("duplicate variable %r" % name)
        self._index[name] = len(self.names)
        self.names.append(name)
        self.classes.append(klass)
        self.weights.append(weight)
        self.derivations.append(None)
        if klass == EXPONENTIAL:
            if not deriv:
                raise ValueError("exponential %r needs a derivation row" % name)
            self._pending.append((len(self.names) - 1, deriv))

    def _resolve(self):
        for idx, deriv in self._pending:
            self.derivations[idx] = {self._index[b]: qq(c) for b, c in deriv.items()}
        self._pending = []

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown variable %r" % name) from None

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def extend(self, entries):
        """New table with extra variables appended; old polys lift cheaply."""
        t = VarTable([])
        t.names = list(self.names)
        t.classes = list(self.classes)
        t.weights = list(self.weights)
        t.derivations = list(self.derivations)
        t._index = dict(self._index)
        for e in entries:
            t._add(e)
        t._resolve()
        return t

    def extends(self, other):
        return self.names[:len(other.names)] == other.names

    def var(self, name):
        return Poly(self, {((self.index(name), 1),): QQ1})

    def vars(self, *names):
        return [self.var(n) for n in names]

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(): QQ1})

    def const(self, c):
        c = qq(c)
        return Poly(self, {(): c} if c else {})


def _mono_key(m):
    # graded lex over the table order; valid monomial order for
    # nonnegative exponents, and a stable total order otherwise
    return (sum(e for _, e in m), tuple((-i, e) for i, e in m))


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            e = e1 + e2
            if e:
                out.append((v1, e))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_div(m1, m2):
    """m1 / m2, or None when not divisible (ordinary variables only)."""
    rest = dict(m1)
    for v, e in m2:
        ne = rest.get(v, 0) - e
        if ne < 0:
            return None
        if ne:
            rest[v] = ne
        else:
            rest.pop(v, None)
    return tuple(sorted(rest.items()))


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms):
        self.table = table
        self.terms = terms

    # -- construction helpers -------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.table is self.table:
                return other
            if self.table.extends(other.table):
                return Poly(self.table, other.terms)
            raise ValueError("polynomials live on incompatible tables")
        c = qq(other)
        return Poly(self.table, {(): c} if c else {})

    def lift(self, table):
        if not table.extends(self.table):
            raise ValueError("target table does not extend source table")
        return Poly(table, self.terms)

    def copy(self):
        return Poly(self.table, dict(self.terms))

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for m, c in b.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, RatFunc):
                return NotImplemented
            c = qq(other)
            if not c:
                return Poly(self.table, {})
            return Poly(self.table, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly(self.table, {})
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                c = out.get(m)
                if c is None:
                    out[m] = c1 * c2
                else:
                    c = c + c1 * c2
                    if c:
                        out[m] = c
                    else:
                        del out[m]
        return Poly(self.table, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("polynomial powers must be integers")
        if k < 0:
            # units: single monomials in exponential generators
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-unit polynomial")
            (m, c), = self.terms.items()
            if any(self.table.classes[i] != EXPONENTIAL for i, _ in m):
                raise ValueError("negative power of a non-unit polynomial")
            inv = Poly(self.table, {tuple((i, -e) for i, e in m): QQ1 / c})
            return inv ** (-k)
        result = self.table.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly) or isinstance(other, RatFunc):
            return RatFunc.make(self, other)
        c = qq(other)
        return self * (QQ1 / c)

    def __rtruediv__(self, other):
        return RatFunc.make(self._coerce(other), self)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return other == self
        other = self._coerce(other)
        return self.terms == other.terms

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    # -- structure -------------------------------------------------------

    def constant(self):
        """Rational value of a constant polynomial."""
        if not self.terms:
            return QQ0
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        raise ValueError("polynomial is not constant")

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def weighted_degree(self):
        if not self.terms:
            return None
        w = self.table.weights
        return max(sum(e * w[i] for i, e in m) for m in self.terms)

    def is_weighted_homogeneous(self):
        if not self.terms:
            return True
        w = self.table.weights
        degs = {sum(e * w[i] for i, e in m) for m in self.terms}
        return len(degs) == 1

    def variables(self):
        out = set()
        for m in self.terms:
            for i, _ in m:
                out.add(i)
        return out

    def degree_in(self, name):
        i = self.table.index(name)
        d = 0
        for m in self.terms:
            for j, e in m:
                if j == i:
                    d = max(d, e)
        return d

    def lead(self):
        """(monomial, coefficient) of the graded-lex leading term."""
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def coeff_of(self, name, k):
        """Coefficient of name**k, a polynomial in the other variables."""
        i = self.table.index(name)
        out = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for j, ej in m:
                if j == i:
                    e = ej
                else:
                    rest.append((j, ej))
            if e == k:
                out[tuple(rest)] = c
        return Poly(self.table, out)

    def as_univariate(self, name):
        """Map degree -> coefficient Poly with respect to one variable."""
        i = self.table.index(name)
        out = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for j, ej in m:
                if j == i:
                    e = ej
                else:
                    rest.append((j, ej))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly(self.table, t) for e, t in out.items()}

    # -- calculus --------------------------------------------------------

    def derive(self, name):
        """Exact partial derivative; exponential generators use their rows."""
        table = self.table
        i = table.index(name)
        out = {}
        for m, c in self.terms.items():
            for pos, (j, e) in enumerate(m):
                if j == i:
                    nc = c * e
                    if e == 1:
                        nm = m[:pos] + m[pos + 1:]
                    else:
                        nm = m[:pos] + ((j, e - 1),) + m[pos + 1:]
                    prev = out.get(nm, QQ0)
                    prev = prev + nc
                    if prev:
                        out[nm] = prev
                    else:
                        out.pop(nm, None)
                else:
                    row = table.derivations[j]
                    if row:
                        cv = row.get(i)
                        if cv:
                            nc = c * e * cv
                            prev = out.get(m, QQ0)
                            prev = prev + nc
                            if prev:
                                out[m] = prev
                            else:
                                out.pop(m, None)
        return Poly(table, out)

    def substitute(self, bindings):
        """Ring homomorphism sending named variables to polynomials/scalars.

        Exponential generators may not be substituted.
        """
        table = self.table
        idx_map = {}
        for name, val in bindings.items():
            i = table.index(name)
            if table.classes[i] == EXPONENTIAL:
                raise ValueError("cannot substitute exponential variable %r" % name)
            if not isinstance(val, Poly):
                val = table.const(val)
            elif val.table is not table:
                if table.extends(val.table):
                    val = val.lift(table)
                else:
                    raise ValueError("binding for %r on incompatible table" % name)
            idx_map[i] = val
        out = Poly(table, {})
        powers = {}  # (idx, exp) -> Poly
        for m, c in self.terms.items():
            fixed = []
            factors = []
            for j, e in m:
                if j in idx_map:
                    key = (j, e)
                    p = powers.get(key)
                    if p is None:
                        p = idx_map[j] ** e
                        powers[key] = p
                    factors.append(p)
                else:
                    fixed.append((j, e))
            term = Poly(table, {tuple(fixed): c})
            for p in factors:
                term = term * p
            out = out + term
        return out

    def map_to(self, table, images):
        """Ring homomorphism into another table; images keyed by name.

        Every variable occurring in the polynomial must have an image
        (a Poly on the target table, or a scalar).
        """
        out = table.zero()
        cache = {}
        for m, c in self.terms.items():
            term = Poly(table, {(): c})
            for j, e in m:
                key = (j, e)
                p = cache.get(key)
                if p is None:
                    img = images[self.table.names[j]]
                    if not isinstance(img, Poly):
                        img = table.const(img)
                    p = img ** e
                    cache[key] = p
                term = term * p
            out = out + term
        return out

    def eval_scalar(self, bindings):
        """Evaluate at rational points for every variable present."""
        table = self.table
        vals = {table.index(n): qq(v) for n, v in bindings.items()}
        total = QQ0
        for m, c in self.terms.items():
            acc = c
            for j, e in m:
                if j not in vals:
                    raise ValueError("no value for %r" % table.names[j])
                acc = acc * vals[j] ** e
            total = total + acc
        return total

    # -- display ---------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.table.names
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for i, e in m:
                if e == 1:
                    factors.append(names[i])
                else:
                    factors.append("%s^%d" % (names[i], e))
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        s = " + ".join(parts).replace("+ -", "- ")
        return s

    def __repr__(self):
        return "Poly(%s)" % self

    # -- exact division ---------------------------------------------------

    def divexact(self, other):
        """Exact quotient; raises if the division is not exact."""
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.terms:
            return self
        rem = dict(self.terms)
        lm, lc = other.lead()
        qterms = {}
        while rem:
            m = max(rem, key=_mono_key)
            qm = _mono_div(m, lm)
            if qm is None:
                raise ValueError("inexact polynomial division")
            qc = rem[m] / lc
            qterms[qm] = qc
            for m2, c2 in other.terms.items():
                mm = _mono_mul(qm, m2)
                c = rem.get(mm, QQ0) - qc * c2
                if c:
                    rem[mm] = c
                else:
                    rem.pop(mm, None)
        return Poly(self.table, qterms)


# ---------------------------------------------------------------------------
# gcd machinery (used for rational-function reduction and square-free parts)
# ---------------------------------------------------------------------------


def _split_laurent_unit(p):
    """Multiply by E^k units so exponential exponents become >= 0."""
    table = p.table
    neg = {}
    for m in p.terms:
        for i, e in m:
            if e < 0 and table.classes[i] == EXPONENTIAL:
                if e < neg.get(i, 0):
                    neg[i] = e
    if not neg:
        return p
    unit = tuple(sorted((i, -e) for i, e in neg.items()))
    return Poly(table, {_mono_mul(m, unit): c for m, c in p.terms.items()})


def _content_and_primitive(p, name):
    uni = p.as_univariate(name)
    coeffs = list(uni.values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    if g.is_constant():
        return p.table.one(), p
    return g, p.divexact(g)


def poly_gcd(f, g):
    """Multivariate gcd over the rationals, normalized monic in graded lex."""
    if f.is_zero and g.is_zero:
        return f.table.zero()
    if f.is_zero:
        return _monic(g)
    if g.is_zero:
        return _monic(f)
    f = _split_laurent_unit(f)
    g = _split_laurent_unit(g)
    # strip common monomial part
    fmin = _min_exponents(f)
    gmin = _min_exponents(g)
    common = {}
    for i, e in fmin.items():
        if i in gmin:
            common[i] = min(e, gmin[i])
    mono = tuple(sorted(common.items()))
    if mono:
        inv = tuple((i, -e) for i, e in mono)
        f = Poly(f.table, {_mono_mul(m, inv): c for m, c in f.terms.items()})
        g = Poly(g.table, {_mono_mul(m, inv): c for m, c in g.terms.items()})
    h = _gcd_rec(f, g)
    if mono:
        h = Poly(h.table, {_mono_mul(m, mono): c for m, c in h.terms.items()})
    return _monic(h)


def _min_exponents(p):
    table = p.table
    mins = None
    for m in p.terms:
        d = {i: e for i, e in m if table.classes[i] != EXPONENTIAL}
        if mins is None:
            mins = d
        else:
            for i in list(mins):
                mins[i] = min(mins[i], d.get(i, 0))
                if mins[i] == 0:
                    del mins[i]
        if not mins:
            return {}
    return mins or {}


def _monic(p):
    if p.is_zero:
        return p
    _, lc = p.lead()
    if lc == 1:
        return p
    return p * (QQ1 / lc)


def _gcd_rec(f, g):
    if f.is_constant() or g.is_constant():
        return f.table.one()
    common = f.variables() & g.variables()
    common = [i for i in common if f.table.classes[i] != EXPONENTIAL]
    if not common:
        return f.table.one()
    name = f.table.names[min(common)]
    cf, pf = _content_and_primitive(f, name)
    cg, pg = _content_and_primitive(g, name)
    cont = poly_gcd(cf, cg)
    h = _gcd_uni(pf, pg, name)
    return cont * h


def _gcd_uni(f, g, name):
    # primitive PRS on the main variable
    if f.degree_in(name) < g.degree_in(name):
        f, g = g, f
    while True:
        r = _pseudo_rem(f, g, name)
        if r.is_zero:
            _, pp = _content_and_primitive(g, name)
            return pp
        if r.degree_in(name) == 0:
            return f.table.one()
        _, r = _content_and_primitive(r, name)
        f, g = g, r


def _pseudo_rem(f, g, name):
    df = f.degree_in(name)
    dg = g.degree_in(name)
    if df < dg:
        return f
    x = f.table.var(name)
    guni = g.as_univariate(name)
    glc = guni[dg]
    r = f
    while not r.is_zero:
        dr = r.degree_in(name)
        if dr < dg:
            break
        runi = r.as_univariate(name)
        rlc = runi[dr]
        r = r * glc - g * (rlc * x ** (dr - dg))
    return r


def poly_lcm(f, g):
    if f.is_zero or g.is_zero:
        return f.table.zero()
    return _monic(f.divexact(poly_gcd(f, g)) * g)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


def _strip_exponential_unit(num, den):
    """Move common exponential-unit factors of the denominator upstairs."""
    table = den.table
    expvars = set()
    for m in den.terms:
        for i, _ in m:
            if table.classes[i] == EXPONENTIAL:
                expvars.add(i)
    if not expvars:
        return num, den
    mins = {}
    for i in expvars:
        lo = None
        for m in den.terms:
            e = dict(m).get(i, 0)
            lo = e if lo is None else min(lo, e)
        if lo:
            mins[i] = lo
    if not mins:
        return num, den
    inv = tuple(sorted((i, -e) for i, e in mins.items()))
    unit_inv = Poly(table, {inv: QQ1})
    return num * unit_inv, den * unit_inv


class RatFunc:
    """Quotient of two polynomials, reduced and with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den, reduced=False):
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if num.is_zero:
                den = den.table.one()
            else:
                g = poly_gcd(num, den)
                if not (g.is_constant() and g.constant() == 1):
                    num = num.divexact(g)
                    den = den.divexact(g)
                num, den = _strip_exponential_unit(num, den)
            if not den.is_constant() or den.constant() != 1:
                _, lc = den.lead()
                if lc != 1:
                    inv = QQ1 / lc
                    num = num * inv
                    den = den * inv
        self.num = num
        self.den = den

    @staticmethod
    def make(num, den):
        if isinstance(den, RatFunc):
            return RatFunc.wrap(num) / den
        return RatFunc(num, den)

    @staticmethod
    def wrap(p):
        if isinstance(p, RatFunc):
            return p
        return RatFunc(p, p.table.one(), reduced=True)

    @property
    def table(self):
        return self.num.table

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc.wrap(other)
        return RatFunc.wrap(self.num.table.const(other))

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_poly(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError("not a polynomial: %s" % self)
        return self.num * (QQ1 / self.den.constant())

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other):
        other = self._coerce(other)
        return (self.num * other.den - other.num * self.den).is_zero

    def __ne__(self, other):
        return not self.__eq__(other)

    def __bool__(self):
        return not self.num.is_zero

    def derive(self, name):
        n = self.num.derive(name) * self.den - self.num * self.den.derive(name)
        return RatFunc(n, self.den * self.den)

    def substitute(self, bindings):
        return RatFunc(self.num.substitute(bindings),
                       self.den.substitute(bindings))

    def __str__(self):
        if self.den.is_constant() and self.den.constant() == 1:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "RatFunc(%s)" % self


def as_ratfunc(x, table=None):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc.wrap(x)
    if table is None:
        raise ValueError("need a table to coerce a scalar")
    return RatFunc.wrap(table.const(x))


# ---------------------------------------------------------------------------
# univariate polynomials over the rational-function field
# ---------------------------------------------------------------------------


class UniPoly:
    """Univariate polynomial with RatFunc coefficients (square-free engine)."""

    def __init__(self, coeffs):
        self.coeffs = {k: c for k, c in coeffs.items() if c}

    def degree(self):
        return max(self.coeffs) if self.coeffs else -1

    @property
    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[self.degree()]

    def monic(self):
        if self.is_zero:
            return self
        lc = self.lc()
        return UniPoly({k: c / lc for k, c in self.coeffs.items()})

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k)
            out[k] = -c if s is None else s - c
        return UniPoly(out)

    def mul_term(self, coef, exp):
        return UniPoly({k + exp: c * coef for k, c in self.coeffs.items()})

    def mul(self, other):
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                s = out.get(k)
                out[k] = c1 * c2 if s is None else s + c1 * c2
        return UniPoly(out)

    def derivative(self):
        return UniPoly({k - 1: c * k for k, c in self.coeffs.items() if k})

    def divmod(self, other):
        if other.is_zero:
            raise ZeroDivisionError
        q = {}
        r = UniPoly(dict(self.coeffs))
        d = other.degree()
        lc = other.lc()
        while not r.is_zero and r.degree() >= d:
            k = r.degree()
            c = r.lc() / lc
            q[k - d] = c
            r = r - other.mul_term(c, k - d)
        return UniPoly(q), r

    def divexact(self, other):
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("inexact univariate division")
        return q


def uni_gcd(f, g):
    while not g.is_zero:
        _, r = f.divmod(g)
        f, g = g, r.monic() if not r.is_zero else r
    return f.monic()


def squarefree_decomposition(f):
    """Yun's algorithm: list of (square-free factor, multiplicity)."""
    out = []
    a = uni_gcd(f, f.derivative())
    b = f.divexact(a)
    c = f.derivative().divexact(a)
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        ai = uni_gcd(b, d)
        if ai.degree() > 0:
            out.append((ai, i))
        b = b.divexact(ai)
        c = d.divexact(ai)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_binary(f, rname, sname):
    """Square-free split of a homogeneous binary form in (r, s).

    Returns (factors, partition): factors as (UniPoly in r/s, multiplicity),
    the partition listing root multiplicities in descending order, counting
    the root at infinity through the degree drop under dehomogenization.
    """
    if f.is_zero:
        raise ValueError("zero form has no root type")
    ri = f.table.index(rname)
    si = f.table.index(sname)
    degs = set()
    coeffs = {}
    for m, c in f.terms.items():
        er = es = 0
        rest = []
        for j, e in m:
            if j == ri:
                er = e
            elif j == si:
                es = e
            else:
                rest.append((j, e))
        degs.add(er + es)
        key = er
        cur = coeffs.setdefault(key, {})
        prev = cur.get(tuple(rest), QQ0)
        prev = prev + c
        if prev:
            cur[tuple(rest)] = prev
        else:
            cur.pop(tuple(rest), None)
    if len(degs) != 1:
        raise ValueError("form is not homogeneous in (%s, %s)" % (rname, sname))
    deg = degs.pop()
    uni = UniPoly({k: RatFunc.wrap(Poly(f.table, t))
                   for k, t in coeffs.items() if t})
    factors = squarefree_decomposition(uni.monic())
    partition = []
    for fac, mult in factors:
        partition.extend([mult] * fac.degree())
    inf = deg - uni.degree()
    if inf:
        partition.append(inf)
    partition.sort(reverse=True)
    assert sum(partition) == deg
    return factors, partition


# ---------------------------------------------------------------------------
# expression parser (for the model catalog and transcribed expected data)
# ---------------------------------------------------------------------------


class _Tokens:
    def __init__(self, s):
        self.toks = []
        i = 0
        while i < len(s):
            ch = s[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                self.toks.append(("int", s[i:j]))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                    j += 1
                self.toks.append(("name", s[i:j]))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise ValueError("bad character %r in expression %r" % (ch, s))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def next(self):
        t = self.peek()
        self.pos += 1
        return t


def parse_expr(s, table):
    """Parse +,-,*,/,^ expressions over named variables into a RatFunc."""
    toks = _Tokens(s)

    def atom():
        kind, val = toks.next()
        if kind == "int":
            return RatFunc.wrap(table.const(int(val)))
        if kind == "name":
            return RatFunc.wrap(table.var(val))
        if kind == "(":
            e = expr()
            k, _ = toks.next()
            if k != ")":
                raise ValueError("missing ) in %r" % s)
            return e
        if kind == "-":
            return -atom()
        raise ValueError("unexpected token %r in %r" % (val, s))

    def power():
        base = atom()
        kind, _ = toks.peek()
        if kind == "^":
            toks.next()
            k, v = toks.next()
            sign = 1
            if k == "(":
                k, v = toks.next()
                if k == "-":
                    sign = -1
                    k, v = toks.next()
                if k != "int":
                    raise ValueError("bad exponent in %r" % s)
                e = int(v) * sign
                k2, _ = toks.next()
                if k2 != ")":
                    raise ValueError("bad exponent in %r" % s)
            elif k == "-":
                k, v = toks.next()
                if k != "int":
                    raise ValueError("bad exponent in %r" % s)
                e = -int(v)
            elif k == "int":
                e = int(v)
            else:
                raise ValueError("bad exponent in %r" % s)
            return base ** e
        return base

    def term():
        e = power()
        while True:
            kind, _ = toks.peek()
            if kind == "*":
                toks.next()
                e = e * power()
            elif kind == "/":
                toks.next()
                e = e / power()
            else:
                return e

    def expr():
        kind, _ = toks.peek()
        neg = False
        if kind == "-":
            toks.next()
            neg = True
        elif kind == "+":
            toks.next()
        e = term()
        if neg:
            e = -e
        while True:
            kind, _ = toks.peek()
            if kind == "+":
                toks.next()
                e = e + term()
            elif kind == "-":
                toks.next()
                e = e - term()
            else:
                return e

    e = expr()
    if toks.peek()[0] is not None:
        raise ValueError("trailing input in %r" % s)
    return e


def parse_poly(s, table):
    return parse_expr(s, table).as_poly()
