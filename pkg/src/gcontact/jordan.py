"""Cubic Jordan algebras and their cubic / dual-cubic tensors.

The catalog covers the one-dimensional algebra J1 (cubic t^3/3), the spin
factors JSm = C^m + C (cubic <v,v> lambda in a basis where the bilinear
form is the anti-identity), and the 3x3 hermitian matrix algebras J3(A)
over the split composition algebras of dimension 0, 1, 2, 4, 8 (cubic =
determinant, extracted from the degree-3 Cayley-Hamilton identity).

Only the cubic form C enters the computations; the Jordan product itself
is never needed.  The dual cubic is *solved for* from the normalization

    C*(C(t^2)^2) = (4/27) C(t^3) t

and cross-checked against closed forms, never hand-coded.
"""

from __future__ import annotations

import itertools
import json

from .rings import PARAMETER, Poly, QQ0, QQ1, VarTable, qq
from .linalg import nullspace, rank_qq, solve_unique


class CompositionAlgebra:
    """Split composition algebra given by structure constants.

    dim 0 is the degenerate 'no off-diagonal part' case; dim 1 is the
    ground field; dim 2 is the split pair algebra; dim 4 the 2x2 matrix
    algebra; dim 8 the vector-matrix (Zorn) algebra.  At construction the
    norm is checked to be multiplicative with generic symbolic arguments.
    """

    def __init__(self, dim):
        if dim not in (0, 1, 2, 4, 8):
            raise ValueError("composition algebra dimension must be 0,1,2,4,8")
        self.dim = dim
        self.mult = {}  # (i, j) -> dict k -> QQ
        self.conj = []  # per basis index: dict k -> QQ
        self.unit = {}  # dict k -> QQ for the unit element
        if dim == 0:
            pass
        elif dim == 1:
            self.mult[(0, 0)] = {0: QQ1}
            self.conj = [{0: QQ1}]
            self.unit = {0: QQ1}
        elif dim == 2:
            # basis e0 = (1,0), e1 = (0,1); conjugation swaps
            self.mult[(0, 0)] = {0: QQ1}
            self.mult[(1, 1)] = {1: QQ1}
            self.mult[(0, 1)] = {}
            self.mult[(1, 0)] = {}
            self.conj = [{1: QQ1}, {0: QQ1}]
            self.unit = {0: QQ1, 1: QQ1}
        elif dim == 4:
            # basis E11, E12, E21, E22; conjugation is the 2x2 adjugate
            idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
            for (a, b), i in idx.items():
                for (c, d), j in idx.items():
                    self.mult[(i, j)] = {idx[(a, d)]: QQ1} if b == c else {}
            self.conj = [{3: QQ1}, {1: -QQ1}, {2: -QQ1}, {0: QQ1}]
            self.unit = {0: QQ1, 3: QQ1}
        else:
            # Zorn vector matrices (a, v; w, b), v, w in C^3:
            # (a1,v1;w1,b1)(a2,v2;w2,b2) =
            #   (a1 a2 + v1.w2, a1 v2 + b2 v1 - w1 x w2;
            #    a2 w1 + b1 w2 + v1 x v2, b1 b2 + w1.v2)
            # index 0 = a, 1..3 = v, 4..6 = w, 7 = b
            def cross(i, j):
                # basis cross products e_i x e_j in C^3 with sign
                eps = {(0, 1): (2, 1), (1, 2): (0, 1), (2, 0): (1, 1),
                       (1, 0): (2, -1), (2, 1): (0, -1), (0, 2): (1, -1)}
                return eps.get((i, j))

            for i in range(8):
                for j in range(8):
                    out = {}

                    def add(k, c):
                        out[k] = out.get(k, QQ0) + qq(c)

                    if i == 0 and j == 0:
                        add(0, 1)
                    if i == 0 and 1 <= j <= 3:
                        add(j, 1)          # a1 v2
                    if i == 7 and 4 <= j <= 6:
                        add(j, 1)          # b1 w2
                    if 1 <= i <= 3 and j == 7:
                        add(i, 1)          # b2 v1
                    if 4 <= i <= 6 and j == 0:
                        add(i, 1)          # a2 w1
                    if i == 7 and j == 7:
                        add(7, 1)
                    if 1 <= i <= 3 and 4 <= j <= 6:
                        if i - 1 == j - 4:
                            add(0, 1)      # v1 . w2
                    if 4 <= i <= 6 and 1 <= j <= 3:
                        if i - 4 == j - 1:
                            add(7, 1)      # w1 . v2
                    if 4 <= i <= 6 and 4 <= j <= 6:
                        c = cross(i - 4, j - 4)
                        if c:
                            add(1 + c[0], -c[1])   # - w1 x w2 into v-slot
                    if 1 <= i <= 3 and 1 <= j <= 3:
                        c = cross(i - 1, j - 1)
                        if c:
                            add(4 + c[0], c[1])    # v1 x v2 into w-slot
                    self.mult[(i, j)] = {k: c for k, c in out.items() if c}
            self.conj = []
            for i in range(8):
                if i == 0:
                    self.conj.append({7: QQ1})
                elif i == 7:
                    self.conj.append({0: QQ1})
                else:
                    self.conj.append({i: -QQ1})
            self.unit = {0: QQ1, 7: QQ1}
        if dim:
            self._verify_norm_multiplicative()

    def product(self, a, b, zero):
        """Product of two A-vectors with Poly coordinates."""
        out = [zero] * self.dim
        for i, ai in enumerate(a):
            if ai.is_zero if isinstance(ai, Poly) else ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj.is_zero if isinstance(bj, Poly) else bj == 0:
                    continue
                row = self.mult[(i, j)]
                if row:
                    p = ai * bj
                    for k, c in row.items():
                        out[k] = out[k] + p * c
        return out

    def conjugate(self, a, zero):
        out = [zero] * self.dim
        for i, ai in enumerate(a):
            for k, c in self.conj[i].items():
                out[k] = out[k] + ai * c
        return out

    def norm(self, a, zero):
        """Quadratic norm N(a), the unit-component of a * conj(a)."""
        p = self.product(a, self.conjugate(a, zero), zero)
        n = None
        for k, c in self.unit.items():
            cand = p[k] * (QQ1 / c)
            if n is None:
                n = cand
            elif not (n - cand).is_zero:
                raise AssertionError("norm is not a multiple of the unit")
        for k in range(self.dim):
            if k not in self.unit and not p[k].is_zero:
                raise AssertionError("norm is not a multiple of the unit")
        return n

    def _verify_norm_multiplicative(self):
        T = VarTable([("a%d" % i, PARAMETER) for i in range(self.dim)] +
                     [("b%d" % i, PARAMETER) for i in range(self.dim)])
        zero = T.zero()
        a = [T.var("a%d" % i) for i in range(self.dim)]
        b = [T.var("b%d" % i) for i in range(self.dim)]
        ab = self.product(a, b, zero)
        lhs = self.norm(ab, zero)
        rhs = self.norm(a, zero) * self.norm(b, zero)
        if not (lhs - rhs).is_zero:
            raise AssertionError("norm fails multiplicativity")
        # conj is an anti-automorphism
        lhs2 = self.conjugate(ab, zero)
        rhs2 = self.product(self.conjugate(b, zero),
                            self.conjugate(a, zero), zero)
        for l, r in zip(lhs2, rhs2):
            if not (l - r).is_zero:
                raise AssertionError("conjugation fails anti-multiplicativity")


CATALOG_LABELS = ("J1", "JS1", "JS2", "JS3", "JS4", "J3(0)", "J3(R)",
                  "J3(C)", "J3(H)", "J3(O)")

_MODEL_CACHE = {}


def catalog_model(label):
    """Shared read-only instance with the dual solved (cached per label)."""
    m = _MODEL_CACHE.get(label)
    if m is None:
        m = build_jordan(label).with_dual()
        _MODEL_CACHE[label] = m
    return m


class JordanModel:
    """A cubic Jordan algebra presented through its symmetric cubic tensor."""

    def __init__(self, label, dimW, cubic_poly, ttable, trace_quad=None,
                 check=True):
        self.label = label
        self.dimW = dimW
        self.n = dimW + 1
        self.ttable = ttable            # parameter table carrying t1..tN
        self.tvars = [ttable.var("t%d" % (a + 1)) for a in range(dimW)]
        self.cubic_poly = cubic_poly    # C(t^3) as a Poly in the t-vars
        self.trace_quad = trace_quad    # tr(t^2) as a Poly, where defined
        self.C = self._extract_tensor(cubic_poly)
        self._C_pairs = _index_pairs(self.C, dimW)
        self.Cstar = None
        self._S_pairs = None
        self.dual_poly = None
        if check:
            rank = self.injectivity_rank()
            if rank != dimW:
                raise AssertionError("cubic map W -> S^2 W* has rank %d != %d"
                                     % (rank, dimW))

    # -- tensors -----------------------------------------------------------

    def _extract_tensor(self, poly):
        out = {}
        for a in range(self.dimW):
            da = poly.derive("t%d" % (a + 1))
            for b in range(a, self.dimW):
                dab = da.derive("t%d" % (b + 1))
                for c in range(b, self.dimW):
                    v = dab.derive("t%d" % (c + 1)).constant() / 6
                    if v:
                        out[(a, b, c)] = v
        return out

    def with_dual(self):
        if self.Cstar is None:
            self.Cstar = self._solve_dual()
            self._S_pairs = _index_pairs(self.Cstar, self.dimW)
            self.dual_poly = cubic_apply(self.Cstar, self.tvars,
                                         self.ttable.zero())
        return self

    def gram(self):
        """Trace-form Gram matrix from the stored quadratic tr(t^2)."""
        if self.trace_quad is None:
            raise ValueError("no trace form recorded for %s" % self.label)
        G = []
        for a in range(self.dimW):
            da = self.trace_quad.derive("t%d" % (a + 1))
            G.append([da.derive("t%d" % (b + 1)).constant() / 2
                      for b in range(self.dimW)])
        return G

    def rescale(self, lam):
        """Model with cubic multiplied by lam (dual rescales by 1/lam)."""
        m = JordanModel(self.label + "*%s" % lam, self.dimW,
                        self.cubic_poly * qq(lam), self.ttable,
                        trace_quad=self.trace_quad, check=False)
        if self.Cstar is not None:
            m.Cstar = {k: v / qq(lam) for k, v in self.Cstar.items()}
            m._S_pairs = _index_pairs(m.Cstar, m.dimW)
            m.dual_poly = cubic_apply(m.Cstar, m.tvars, m.ttable.zero())
        return m

    # -- evaluations -------------------------------------------------------

    def cubic(self, vec, zero=None):
        return cubic_apply(self.C, vec, zero)

    def grad(self, vec, zero=None):
        """C_a(vec^2) = C_abc vec^b vec^c for each a."""
        return grad_apply(self._C_pairs, self.dimW, vec, zero)

    def hess(self, vec, zero=None):
        """C_ab(vec) = C_abc vec^c as a symmetric matrix."""
        return hess_apply(self.C, self.dimW, vec, zero)

    def dual(self, vec, zero=None):
        return cubic_apply(self.Cstar, vec, zero)

    def dual_grad(self, vec, zero=None):
        return grad_apply(self._S_pairs, self.dimW, vec, zero)

    def dual_hess(self, vec, zero=None):
        return hess_apply(self.Cstar, self.dimW, vec, zero)

    # -- linear-algebra oracles --------------------------------------------

    def injectivity_rank(self):
        rows = []
        for a in range(self.dimW):
            for b in range(a, self.dimW):
                row = {}
                for c in range(self.dimW):
                    v = tensor_get(self.C, a, b, c)
                    if v:
                        row[c] = v
                if row:
                    rows.append(row)
        return rank_qq(rows, self.dimW)

    def psi_kernel(self):
        """Kernel of A^a_b -> C_{ab[c} A^a_{d]} on End(W).

        Returns (dimension, basis) with basis vectors as dimW x dimW
        matrices of rationals (row index a, column index b: A^a_b).
        """
        N = self.dimW

        def unk(a, b):
            return a * N + b

        rows = []
        for b in range(N):
            for c in range(N):
                for d in range(c + 1, N):
                    row = {}
                    for a in range(N):
                        v1 = tensor_get(self.C, a, b, c)
                        if v1:
                            row[unk(a, d)] = row.get(unk(a, d), QQ0) + v1
                        v2 = tensor_get(self.C, a, b, d)
                        if v2:
                            row[unk(a, c)] = row.get(unk(a, c), QQ0) - v2
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        rows.append(row)
        basis = nullspace(rows, N * N)
        mats = []
        for vec in basis:
            mats.append([[vec.get(unk(a, b), QQ0) for b in range(N)]
                         for a in range(N)])
        return len(basis), mats

    # -- dual cubic ---------------------------------------------------------

    def _solve_dual(self):
        """Solve C*(C(t^2)^2) = (4/27) C(t^3) t for the symmetric 3-tensor."""
        N = self.dimW
        triples = list(itertools.combinations_with_replacement(range(N), 3))
        index = {t: i for i, t in enumerate(triples)}
        g = self.grad(self.tvars, self.ttable.zero())
        products = {}
        for b in range(N):
            for c in range(b, N):
                p = g[b] * g[c]
                if not p.is_zero:
                    products[(b, c)] = p
        # rows keyed by (a, monomial): sum coeff * S_triple = rhs
        rows = {}
        for a in range(N):
            for (b, c), p in products.items():
                tri = tuple(sorted((a, b, c)))
                col = index[tri]
                mult = QQ1 if b == c else qq(2)
                for mono, coef in p.terms.items():
                    row = rows.setdefault((a, mono), {})
                    row[col] = row.get(col, QQ0) + coef * mult
        rhs_map = {}
        for a in range(N):
            r = self.cubic_poly * self.tvars[a] * qq(4, 27)
            for mono, coef in r.terms.items():
                rhs_map[(a, mono)] = coef
        keys = sorted(set(rows) | set(rhs_map),
                      key=lambda k: (k[0], sorted(k[1])))
        mat = []
        rhs = []
        for k in keys:
            mat.append({c: v for c, v in rows.get(k, {}).items() if v})
            rhs.append(rhs_map.get(k, QQ0))
        try:
            sol = solve_unique(mat, rhs, len(triples))
        except ValueError as e:
            raise AssertionError(
                "dual-cubic normalization has no unique solution for %s: %s"
                % (self.label, e)) from None
        out = {}
        for tri, i in index.items():
            if sol[i]:
                out[tri] = sol[i]
        return out

    def verify_dual_identities(self):
        """The defining identity and its scalar consequence, exactly."""
        zero = self.ttable.zero()
        g = self.grad(self.tvars, zero)
        sg = self.dual_grad(g, zero)
        c3 = self.cubic(self.tvars, zero)
        for a in range(self.dimW):
            if not (sg[a] - qq(4, 27) * c3 * self.tvars[a]).is_zero:
                return False
        scalar = self.dual(g, zero) - qq(4, 27) * c3 * c3
        return scalar.is_zero

    # -- export --------------------------------------------------------------

    def tensors_json(self):
        data = {
            "label": self.label,
            "dim": self.dimW,
            "cubic": [[list(k), str(v)] for k, v in sorted(self.C.items())],
        }
        if self.Cstar is not None:
            data["dual"] = [[list(k), str(v)]
                            for k, v in sorted(self.Cstar.items())]
        return json.dumps(data, indent=1, sort_keys=True)


def tensor_get(T, a, b, c):
    return T.get(tuple(sorted((a, b, c))), QQ0)


def _index_pairs(T, N):
    """Per first index: list of ((b, c sorted), coefficient-with-multiplicity)."""
    out = [dict() for _ in range(N)]
    for (a, b, c), v in T.items():
        for perm in set(itertools.permutations((a, b, c))):
            i, rest = perm[0], tuple(sorted(perm[1:]))
            cur = out[i]
            if rest not in cur:
                mult = qq(2) if rest[0] != rest[1] else QQ1
                cur[rest] = v * mult
    return out


def cubic_apply(T, vec, zero):
    """Full contraction T_abc vec^a vec^b vec^c (T stored on sorted triples)."""
    if zero is None:
        zero = vec[0] * 0
    out = zero
    for (a, b, c), v in T.items():
        if a == b == c:
            mult = QQ1
        elif a == b or b == c or a == c:
            mult = qq(3)
        else:
            mult = qq(6)
        out = out + vec[a] * vec[b] * vec[c] * (v * mult)
    return out


def grad_apply(pairs, N, vec, zero):
    if zero is None:
        zero = vec[0] * 0
    out = []
    for a in range(N):
        acc = zero
        for (b, c), coef in pairs[a].items():
            acc = acc + vec[b] * vec[c] * coef
        out.append(acc)
    return out


def hess_apply(T, N, vec, zero):
    if zero is None:
        zero = vec[0] * 0
    out = [[zero] * N for _ in range(N)]
    for a in range(N):
        for b in range(a, N):
            acc = zero
            for c in range(N):
                v = tensor_get(T, a, b, c)
                if v:
                    acc = acc + vec[c] * v
            out[a][b] = acc
            out[b][a] = acc
    return out


# ---------------------------------------------------------------------------
# catalog construction
# ---------------------------------------------------------------------------


_SPLIT_DIMS = {"J3(0)": 0, "J3(R)": 1, "J3(C)": 2, "J3(H)": 4, "J3(O)": 8}


def _ttable(N):
    return VarTable([("t%d" % (a + 1), PARAMETER) for a in range(N)])


def build_jordan(label):
    """Catalog entry by label: J1, JSm (m >= 1), or J3(A)."""
    if label == "J1":
        T = _ttable(1)
        t = T.var("t1")
        return JordanModel(label, 1, t ** 3 / 3, T, trace_quad=t * t)
    if label.startswith("JS"):
        try:
            m = int(label[2:])
        except ValueError:
            raise ValueError("unknown Jordan label %r" % label) from None
        if m < 1:
            raise ValueError("spin factor needs m >= 1")
        N = m + 1
        T = _ttable(N)
        v = [T.var("t%d" % (a + 1)) for a in range(m)]
        lam = T.var("t%d" % N)
        # <v, v> in the adapted basis pairing a with m+1-a
        q = T.zero()
        for a in range(m):
            q = q + v[a] * v[m - 1 - a]
        return JordanModel(label, N, q * lam, T, trace_quad=q + lam * lam)
    if label in _SPLIT_DIMS:
        return _build_hermitian(label, _SPLIT_DIMS[label])
    raise ValueError("unknown Jordan label %r" % label)


def _hermitian_basis(d):
    """Basis description: 3 diagonal units then blocks (0,1), (0,2), (1,2)."""
    basis = [("diag", i, None) for i in range(3)]
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        for k in range(d):
            basis.append(("off", (i, j), k))
    return basis


def _build_hermitian(label, d):
    alg = CompositionAlgebra(d)
    N = 3 + 3 * d
    T = _ttable(N)
    zero = T.zero()
    coords = [T.var("t%d" % (a + 1)) for a in range(N)]
    if d == 0:
        cubic = coords[0] * coords[1] * coords[2]
        q = coords[0] ** 2 + coords[1] ** 2 + coords[2] ** 2
        return JordanModel(label, N, cubic, T, trace_quad=q)
    # full matrix form with algebra-valued entries everywhere
    M = _full_matrix(alg, coords, zero)
    M2 = _full_mul(alg, M, M, zero)
    M3a = _full_mul(alg, M2, M, zero)
    M3b = _full_mul(alg, M, M2, zero)
    M3 = [[[(M3a[i][j][k] + M3b[i][j][k]) / 2 for k in range(d)]
           for j in range(3)] for i in range(3)]
    tr = _full_trace(alg, M, zero)
    tr2 = _full_trace(alg, M2, zero)
    # Cayley-Hamilton: M^3 - tr(M) M^2 - (tr(M^2) - tr(M)^2)/2 M = det * Id
    coef1 = (tr2 - tr * tr) / 2
    P = [[[M3[i][j][k] - tr * M2[i][j][k] - coef1 * M[i][j][k]
           for k in range(d)] for j in range(3)] for i in range(3)]
    det = None
    for i in range(3):
        for j in range(3):
            for k in range(d):
                val = P[i][j][k]
                if i == j and k in alg.unit:
                    cand = val * (QQ1 / alg.unit[k])
                    if det is None:
                        det = cand
                    elif not (det - cand).is_zero:
                        raise AssertionError("Cayley-Hamilton residue is not "
                                             "a multiple of the identity")
                elif not val.is_zero:
                    raise AssertionError("Cayley-Hamilton residue has "
                                         "off-identity components")
    return JordanModel(label, N, det, T, trace_quad=tr2)


def _full_matrix(alg, coords, zero):
    d = alg.dim
    basis = _hermitian_basis(d)
    M = [[[zero] * d for _ in range(3)] for _ in range(3)]
    for coord, (kind, pos, k) in zip(coords, basis):
        if kind == "diag":
            for l, c in alg.unit.items():
                M[pos][pos][l] = M[pos][pos][l] + coord * c
        else:
            i, j = pos
            M[i][j][k] = M[i][j][k] + coord
    for i in range(3):
        for j in range(i + 1, 3):
            M[j][i] = alg.conjugate(M[i][j], zero)
    return M


def _full_mul(alg, A, B, zero):
    d = alg.dim
    C = [[[zero] * d for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            for k in range(3):
                p = alg.product(A[i][k], B[k][j], zero)
                for l in range(d):
                    C[i][j][l] = C[i][j][l] + p[l]
    return C


def _full_trace(alg, M, zero):
    # diagonal entries must be scalar multiples of the unit
    tr = zero
    ref = None
    for i in range(3):
        scal = None
        for k, c in alg.unit.items():
            cand = M[i][i][k] * (QQ1 / c)
            if scal is None:
                scal = cand
            elif not (scal - cand).is_zero:
                raise AssertionError("diagonal entry not hermitian-scalar")
        for k in range(alg.dim):
            if k not in alg.unit and not M[i][i][k].is_zero:
                raise AssertionError("diagonal entry not hermitian-scalar")
        tr = tr + scal
    return tr


# closed forms of the dual cubic used as a cross-check only


def sharp_map(model, covec):
    """Raise an index with the inverse trace-form Gram matrix."""
    from .linalg import solve_unique
    G = model.gram()
    N = model.dimW
    rows = [{j: G[i][j] for j in range(N) if G[i][j]} for i in range(N)]
    cols = []
    for k in range(N):
        rhs = [QQ1 if i == k else QQ0 for i in range(N)]
        cols.append(solve_unique(rows, rhs, N))
    zero = covec[0] * 0
    return [sum((covec[k] * cols[k][a] for k in range(N)), zero)
            for a in range(N)]


def dual_closed_form_matches(model):
    """Compare the solved dual against the catalog closed forms.

    J1: 4 s^3 / 9; spin factors: <sharp(v*), sharp(v*)> mu; hermitian
    models: 4 det(sharp(s*)), with sharp the inverse of the trace form.
    """
    model.with_dual()
    zero = model.ttable.zero()
    s = model.tvars  # reuse parameter names as dual coordinates
    if model.label == "J1":
        expect = qq(4, 9) * s[0] ** 3
    elif model.label.startswith("JS"):
        m = model.dimW - 1
        sharp = sharp_map(model, s)
        quad = zero
        for a in range(m):
            quad = quad + sharp[a] * sharp[m - 1 - a]
        expect = quad * s[m]
    elif model.label in _SPLIT_DIMS:
        expect = 4 * model.cubic(sharp_map(model, s), zero)
    else:
        raise ValueError("no closed form recorded for %s" % model.label)
    return (model.dual_poly - expect).is_zero
