"""Weight-graded modules with divided-power generator actions.

A PolyRep is the evaluation of a homogeneous strict polynomial functor (in one
or more variables) on fixed spaces k^{m_1}, ..., k^{m_t}, recorded as:

* a basis indexed 0..dim-1, each vector homogeneous of a multiweight
  (one composition per variable),
* an auxiliary integer grading (parameter degree, e.g. from an E_r factor),
* the action matrices of the divided powers E[i,a,k] and F[i,a,k] of the
  Chevalley generators for each simple root a of gl(m_i), stored sparsely
  with absent keys meaning the zero matrix.

Equivariant maps are exactly the matrices commuting with all generator
matrices and preserving multiweights; evaluation at m_i >= degree_i loses no
information, which is what every Hom/Ext computation downstream relies on.

Conventions: E[i,a,k] raises in variable i (weight gains k at position a,
loses k at position a+1), F lowers.  Generator keys are (var, root, k, sign)
with sign +1 for E and -1 for F.

Composition of functors evaluates as constructor application: the rep of
Gamma^d(X) on V is divided_power(rep of X on V, d), and so on.  This is why
every constructor here acts through the generator matrices of its input
instead of assuming the input is a standard space.
"""

from __future__ import annotations

import itertools
import json
from math import comb, factorial

import numpy as np
import scipy.sparse as sp

from . import fplin, weights as wt


class GradedSpace:
    """A finite graded multiplicity space: a tuple of integer degrees."""

    def __init__(self, degrees):
        self.degrees = tuple(int(g) for g in degrees)

    @property
    def dim(self):
        return len(self.degrees)

    def tensor(self, other):
        return GradedSpace(
            a + b for a in self.degrees for b in other.degrees
        )

    def dual(self):
        return GradedSpace(-g for g in self.degrees)

    def __repr__(self):
        return "GradedSpace(%r)" % (self.degrees,)

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.degrees == other.degrees


def trivial_space(ell):
    """k^ell concentrated in degree 0."""
    return GradedSpace((0,) * ell)


def e_r_space(p, r):
    """The extension algebra of the r-fold twist of the identity: one
    dimension in each even degree 0, 2, ..., 2 p^r - 2."""
    return GradedSpace(range(0, 2 * p**r - 1, 2))


class PolyRep:
    """See module docstring.  gens maps (var, root, k, sign) -> matrix."""

    def __init__(self, p, ms, degrees, weights, aux, gens, labels=None, expr=None):
        self.p = p
        self.ms = tuple(ms)
        self.degrees = tuple(degrees)
        self.weights = list(weights)
        self.aux = np.asarray(aux, dtype=np.int64)
        self.gens = gens
        self.labels = labels
        self.expr = expr
        self._blocks = None

    @property
    def dim(self):
        return len(self.weights)

    @property
    def nvars(self):
        return len(self.ms)

    def gen(self, key):
        """Generator matrix for key, or None for the zero matrix."""
        return self.gens.get(key)

    def gen_keys(self):
        """All potentially nonzero generator keys for this shape.  For an
        inhomogeneous variable (degree None) the divided-power range is read
        off the realized weights instead."""
        keys = []
        for i, (m, d) in enumerate(zip(self.ms, self.degrees)):
            if d is None:
                d = max((sum(w[i]) for w in self.weights), default=0)
            for a in range(m - 1):
                for k in range(1, d + 1):
                    keys.append((i, a, k, 1))
                    keys.append((i, a, k, -1))
        return keys

    def apply_gen(self, key, vecs):
        """Apply one generator to column vectors (2d array); zero if absent."""
        g = self.gens.get(key)
        if g is None:
            return np.zeros_like(np.asarray(vecs))
        out = g @ vecs
        if sp.issparse(out):
            out = out.toarray()
        return np.asarray(out) % self.p

    def weight_blocks(self):
        """dict multiweight -> sorted index array, cached."""
        if self._blocks is None:
            blocks = {}
            for idx, w in enumerate(self.weights):
                blocks.setdefault(w, []).append(idx)
            self._blocks = {
                w: np.array(ix, dtype=np.int64) for w, ix in blocks.items()
            }
        return self._blocks

    def shifted_weight(self, w, key):
        i, a, k, sign = key
        row = list(w[i])
        row[a] += sign * k
        row[a + 1] -= sign * k
        if row[a] < 0 or row[a + 1] < 0:
            return None
        return w[:i] + (tuple(row),) + w[i + 1 :]

    def to_json(self):
        gens = {}
        for key in sorted(self.gens):
            g = sp.coo_matrix(self.gens[key])
            gens["%d,%d,%d,%d" % key] = {
                "shape": list(g.shape),
                "row": g.row.tolist(),
                "col": g.col.tolist(),
                "data": g.data.tolist(),
            }
        return json.dumps(
            {
                "p": self.p,
                "ms": list(self.ms),
                "degrees": list(self.degrees),
                "weights": [[list(row) for row in w] for w in self.weights],
                "aux": self.aux.tolist(),
                "labels": self.labels,
                "expr": self.expr,
                "gens": gens,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        gens = {}
        for key, g in d["gens"].items():
            tup = tuple(int(x) for x in key.split(","))
            gens[tup] = sp.csr_matrix(
                (g["data"], (g["row"], g["col"])), shape=tuple(g["shape"]), dtype=np.int64
            )
        return cls(
            d["p"],
            d["ms"],
            d["degrees"],
            [tuple(tuple(row) for row in w) for w in d["weights"]],
            d["aux"],
            gens,
            labels=[tuple(l) if isinstance(l, list) else l for l in d["labels"]]
            if d["labels"] is not None
            else None,
            expr=d["expr"],
        )


def _pack(mats, p, dim):
    """Drop zero matrices, store the rest as CSR mod p."""
    out = {}
    for key, m in mats.items():
        m = sp.csr_matrix(m, dtype=np.int64)
        m.data %= p
        m.eliminate_zeros()
        if m.nnz:
            out[key] = m
    return out


def standard(p, m):
    """The standard representation k^m in one variable."""
    fplin.check_prime(p)
    ws = []
    for j in range(m):
        row = [0] * m
        row[j] = 1
        ws.append((tuple(row),))
    mats = {}
    for a in range(m - 1):
        e = sp.lil_matrix((m, m), dtype=np.int64)
        e[a, a + 1] = 1
        f = sp.lil_matrix((m, m), dtype=np.int64)
        f[a + 1, a] = 1
        mats[(0, a, 1, 1)] = e
        mats[(0, a, 1, -1)] = f
    return PolyRep(
        p, (m,), (1,), ws, np.zeros(m), _pack(mats, p, m),
        labels=[(j,) for j in range(m)], expr="I",
    )


def multiplicity_tensor(space, rep):
    """U (x) A for a graded multiplicity space U: a direct sum of copies of A
    with the auxiliary grading shifted by the degree of each u."""
    n = space.dim
    d = rep.dim
    ws = [w for _ in range(n) for w in rep.weights]
    aux = np.concatenate([rep.aux + g for g in space.degrees]) if n else np.zeros(0)
    gens = {}
    for key, g in rep.gens.items():
        gens[key] = sp.block_diag([g] * n, format="csr")
    labels = None
    if rep.labels is not None:
        labels = [(u,) + l for u in range(n) for l in rep.labels]
    return PolyRep(rep.p, rep.ms, rep.degrees, ws, aux, _pack(gens, rep.p, n * d), labels=labels)


def multiplicity_standard(p, m, space):
    return multiplicity_tensor(space, standard(p, m))


def _eff_degree(rep, i):
    """Degree of variable i, read off the weights when inhomogeneous."""
    d = rep.degrees[i]
    if d is None:
        d = max((sum(w[i]) for w in rep.weights), default=0)
    return d


def tensor(A, B):
    """Pointwise tensor product of two functors of the same variables."""
    if A.p != B.p or A.ms != B.ms:
        raise ValueError("tensor factors must share p and evaluation dims")
    p = A.p
    degrees = tuple(
        None if a is None or b is None else a + b
        for a, b in zip(A.degrees, B.degrees)
    )
    ws = []
    for wa in A.weights:
        for wb in B.weights:
            ws.append(
                tuple(
                    tuple(x + y for x, y in zip(ra, rb))
                    for ra, rb in zip(wa, wb)
                )
            )
    aux = (A.aux[:, None] + B.aux[None, :]).ravel()
    dim = A.dim * B.dim
    eyeA = sp.eye(A.dim, dtype=np.int64, format="csr")
    eyeB = sp.eye(B.dim, dtype=np.int64, format="csr")
    gens = {}
    for i, m in enumerate(A.ms):
        d = _eff_degree(A, i) + _eff_degree(B, i)
        for a in range(m - 1):
            for k in range(1, d + 1):
                for sign in (1, -1):
                    acc = None
                    for u in range(k + 1):
                        ga = eyeA if u == 0 else A.gens.get((i, a, u, sign))
                        gb = eyeB if k - u == 0 else B.gens.get((i, a, k - u, sign))
                        if ga is None or gb is None:
                            continue
                        term = fplin.kron(ga, gb, p)
                        acc = term if acc is None else (acc + term)
                    if acc is not None:
                        gens[(i, a, k, sign)] = acc
    labels = None
    if A.labels is not None and B.labels is not None and dim <= 200000:
        labels = [la + lb for la in A.labels for lb in B.labels]
    return PolyRep(p, A.ms, degrees, ws, aux, _pack(gens, p, dim), labels=labels)


def tensor_power(A, n):
    if n < 1:
        raise ValueError("tensor_power needs n >= 1")
    out = A
    for _ in range(n - 1):
        out = tensor(out, A)
    return out


def boxtimes(A, B):
    """External tensor product: variables of A followed by variables of B."""
    if A.p != B.p:
        raise ValueError("external factors must share p")
    p = A.p
    ms = A.ms + B.ms
    degrees = A.degrees + B.degrees
    ws = [wa + wb for wa in A.weights for wb in B.weights]
    aux = (A.aux[:, None] + B.aux[None, :]).ravel()
    eyeA = sp.eye(A.dim, dtype=np.int64, format="csr")
    eyeB = sp.eye(B.dim, dtype=np.int64, format="csr")
    gens = {}
    for key, g in A.gens.items():
        gens[key] = fplin.kron(g, eyeB, p)
    for (i, a, k, sign), g in B.gens.items():
        gens[(i + A.nvars, a, k, sign)] = fplin.kron(eyeA, g, p)
    labels = None
    if A.labels is not None and B.labels is not None and A.dim * B.dim <= 200000:
        labels = [la + lb for la in A.labels for lb in B.labels]
    return PolyRep(p, ms, degrees, ws, aux, _pack(gens, p, A.dim * B.dim), labels=labels)


def _gen_columns(A, key):
    """Column c of a generator as a list of (row, coeff); identity for k=0."""
    g = A.gens.get(key)
    if g is None:
        return None
    g = sp.csc_matrix(g)
    cols = []
    for c in range(A.dim):
        lo, hi = g.indptr[c], g.indptr[c + 1]
        cols.append(list(zip(g.indices[lo:hi].tolist(), g.data[lo:hi].tolist())))
    return cols


def _distribute(A, word, i, a, k, sign):
    """Terms of the divided power acting on a product word.

    word is a tuple of A-basis indices (one per tensor slot).  Returns a list
    of (coefficient, target word) over all ways of splitting k into
    nonnegative parts across the slots, acting slotwise.  This is the action
    on the full tensor power; symmetric, divided and exterior powers project
    the words afterwards.
    """
    d = len(word)
    out = []
    colcache = {}

    def col(kj):
        if kj not in colcache:
            colcache[kj] = _gen_columns(A, (i, a, kj, sign))
        return colcache[kj]

    def rec(pos, left, coeff, acc):
        if pos == d:
            if left == 0:
                out.append((coeff, tuple(acc)))
            return
        # k_j = 0: slot unchanged
        rec(pos + 1, left, coeff, acc + [word[pos]])
        for kj in range(1, left + 1):
            cols = col(kj)
            if cols is None:
                continue
            for row, cval in cols[word[pos]]:
                rec(pos + 1, left - kj, coeff * cval, acc + [row])

    rec(0, k, 1, [])
    return out


def _word_weight(A, word):
    w = None
    for idx in word:
        wi = A.weights[idx]
        if w is None:
            w = [list(r) for r in wi]
        else:
            for v, r in enumerate(wi):
                for j, x in enumerate(r):
                    w[v][j] += x
    return tuple(tuple(r) for r in w)


def symmetric_power(A, d):
    """S^d(A) on the sorted-multiset basis (classes of product words)."""
    p = A.p
    if d == 0:
        return _unit_rep(A)
    basis = wt.multisets(A.dim, d)
    index = {m: i for i, m in enumerate(basis)}
    ws = [_word_weight(A, m) for m in basis]
    aux = np.array([sum(A.aux[j] for j in m) for m in basis], dtype=np.int64)
    degrees = tuple(None if g is None else g * d for g in A.degrees)
    gens = {}
    for i, m in enumerate(A.ms):
        for a in range(m - 1):
            for k in range(1, _eff_degree(A, i) * d + 1):
                for sign in (1, -1):
                    mat = sp.dok_matrix((len(basis), len(basis)), dtype=np.int64)
                    any_entry = False
                    for c, word in enumerate(basis):
                        for coeff, target in _distribute(A, word, i, a, k, sign):
                            r = index[tuple(sorted(target))]
                            mat[r, c] = (mat[r, c] + coeff) % p
                            any_entry = True
                    if any_entry:
                        gens[(i, a, k, sign)] = mat
    return PolyRep(
        p, A.ms, degrees, ws, aux, _pack(gens, p, len(basis)), labels=list(basis)
    )


def exterior_power(A, d):
    """Lambda^d(A).

    For odd p this is the sign model on strictly increasing words.  For p = 2
    it is the image of the norm map S^d -> Gamma^d, whose basis consists of
    the squarefree multisets; the generator action is the restriction of the
    Gamma^d action, which never leaks outside the squarefree span (asserted).
    """
    p = A.p
    if d == 0:
        return _unit_rep(A)
    if p == 2:
        return _exterior_power_char2(A, d)
    basis = list(itertools.combinations(range(A.dim), d))
    index = {m: i for i, m in enumerate(basis)}
    ws = [_word_weight(A, m) for m in basis]
    aux = np.array([sum(A.aux[j] for j in m) for m in basis], dtype=np.int64)
    degrees = tuple(None if g is None else g * d for g in A.degrees)
    gens = {}
    for i, m in enumerate(A.ms):
        for a in range(m - 1):
            for k in range(1, _eff_degree(A, i) * d + 1):
                for sign in (1, -1):
                    mat = sp.dok_matrix((len(basis), len(basis)), dtype=np.int64)
                    any_entry = False
                    for c, word in enumerate(basis):
                        for coeff, target in _distribute(A, word, i, a, k, sign):
                            if len(set(target)) < d:
                                continue
                            perm_sign, sorted_t = _sort_sign(target)
                            r = index[sorted_t]
                            mat[r, c] = (mat[r, c] + perm_sign * coeff) % p
                            any_entry = True
                    if any_entry:
                        gens[(i, a, k, sign)] = mat
    return PolyRep(
        p, A.ms, degrees, ws, aux, _pack(gens, p, len(basis)), labels=list(basis)
    )


def _sort_sign(word):
    word = list(word)
    sign = 1
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j - 1] > word[j]:
            word[j - 1], word[j] = word[j], word[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(word)


def _exterior_power_char2(A, d):
    G = divided_power(A, d)
    keep = [i for i, m in enumerate(G.labels) if len(set(m)) == d]
    keep_arr = np.array(keep, dtype=np.int64)
    pos = {g: i for i, g in enumerate(keep)}
    gens = {}
    for key, g in G.gens.items():
        g = sp.csc_matrix(g)
        sub = g[:, keep_arr]
        # a generator applied to a squarefree class stays squarefree
        mask = np.zeros(G.dim, dtype=bool)
        mask[keep_arr] = True
        assert not sub[~mask].nnz, "norm image not closed under %r" % (key,)
        gens[key] = sub[keep_arr]
    return PolyRep(
        A.p,
        A.ms,
        G.degrees,
        [G.weights[i] for i in keep],
        G.aux[keep_arr],
        _pack(gens, A.p, len(keep)),
        labels=[G.labels[i] for i in keep],
    )


def _unit_rep(A):
    """The constant functor k (degree 0) over the variables of A."""
    w = tuple((0,) * m for m in A.ms)
    return PolyRep(
        A.p, A.ms, (0,) * A.nvars, [w], np.zeros(1), {}, labels=[()]
    )


def kuhn_dual(A):
    """Contravariant dual: same basis indexing and weights, E and F matrices
    swapped and transposed, auxiliary degrees negated."""
    gens = {}
    for (i, a, k, sign), g in A.gens.items():
        gens[(i, a, k, -sign)] = sp.csr_matrix(g.T)
    return PolyRep(
        A.p, A.ms, A.degrees, list(A.weights), -A.aux,
        _pack(gens, A.p, A.dim), labels=A.labels,
    )


def divided_power(A, d):
    """Gamma^d(A) = dual(S^d(dual(A))) on the multiset orbit-sum basis."""
    return kuhn_dual(symmetric_power(kuhn_dual(A), d))


def frobenius_twist(A, r):
    """Precomposition with the r-fold Frobenius: weights and degrees scale by
    p^r; the divided power E[k] of the twist is E[k / p^r] when p^r | k."""
    if r == 0:
        return A
    p = A.p
    q = p**r
    ws = [tuple(tuple(q * x for x in row) for row in w) for w in A.weights]
    degrees = tuple(None if g is None else q * g for g in A.degrees)
    gens = {}
    for (i, a, k, sign), g in A.gens.items():
        gens[(i, a, q * k, sign)] = g.copy()
    return PolyRep(
        p, A.ms, degrees, ws, A.aux.copy(), _pack(gens, p, A.dim), labels=A.labels
    )


def direct_sum(A, B):
    if A.p != B.p or A.ms != B.ms or A.degrees != B.degrees:
        raise ValueError("direct summands must match in p, dims and degrees")
    ws = list(A.weights) + list(B.weights)
    aux = np.concatenate([A.aux, B.aux])
    gens = {}
    for key in set(A.gens) | set(B.gens):
        ga = A.gens.get(key, sp.csr_matrix((A.dim, A.dim), dtype=np.int64))
        gb = B.gens.get(key, sp.csr_matrix((B.dim, B.dim), dtype=np.int64))
        gens[key] = sp.block_diag([ga, gb], format="csr")
    labels = None
    if A.labels is not None and B.labels is not None:
        labels = [(0,) + tuple(l) if not isinstance(l, tuple) else (0,) + l for l in A.labels]
        labels += [(1,) + tuple(l) if not isinstance(l, tuple) else (1,) + l for l in B.labels]
    return PolyRep(A.p, A.ms, A.degrees, ws, aux, _pack(gens, A.p, A.dim + B.dim), labels=labels)


def sum_of_standards(p, ms):
    """The direct-sum functor (V_1, ..., V_n) -> V_1 + ... + V_n evaluated on
    standards: inhomogeneous per variable (degrees None)."""
    total = sum(ms)
    offs = np.cumsum([0] + list(ms))
    ws = []
    for i, m in enumerate(ms):
        for j in range(m):
            w = []
            for v, mv in enumerate(ms):
                row = [0] * mv
                if v == i:
                    row[j] = 1
                w.append(tuple(row))
            ws.append(tuple(w))
    gens = {}
    for i, m in enumerate(ms):
        off = offs[i]
        for a in range(m - 1):
            for sign, (r, c) in (((1), (a, a + 1)), ((-1), (a + 1, a))):
                mat = sp.dok_matrix((total, total), dtype=np.int64)
                mat[off + r, off + c] = 1
                gens[(i, a, 1, sign)] = mat
    return PolyRep(
        p, tuple(ms), (None,) * len(ms), ws, np.zeros(total), _pack(gens, p, total)
    )


def sum_diagonal_transport(F, direction, groups=None):
    """Precompose with the diagonal or the sum functor.

    direction "merge" turns an n-variable rep over equal dims (m, ..., m)
    into the one-variable rep of F∘Delta_n: same basis, weights summed, and
    the divided power E[k] acting as the sum over k = k_1 + ... + k_n of the
    products of the per-variable divided powers (which commute).

    direction "split" refines a one-variable rep on k^(m_1+...+m_n) into the
    n-variable rep of F∘(+)^n: groups = (m_1, ..., m_n) partitions the slots,
    weights are split along the groups, and only the generator matrices of
    roots internal to a group survive.
    """
    p = F.p
    if direction == "merge":
        m = F.ms[0]
        if any(mv != m for mv in F.ms):
            raise ValueError("merge needs equal evaluation dims")
        ws = [
            tuple(sum(row[j] for row in w) for j in range(m)) for w in F.weights
        ]
        ws = [(w,) for w in ws]
        n = F.nvars
        eff = [_eff_degree(F, i) for i in range(n)]
        deg = None if any(F.degrees[i] is None for i in range(n)) else sum(F.degrees)
        eye = sp.eye(F.dim, dtype=np.int64, format="csr")
        gens = {}
        for a in range(m - 1):
            for sign in (1, -1):
                for k in range(1, sum(eff) + 1):
                    acc = None
                    for combo in itertools.product(
                        *(range(min(k, eff[i]) + 1) for i in range(n))
                    ):
                        if sum(combo) != k:
                            continue
                        term = eye
                        ok = True
                        for i, ki in enumerate(combo):
                            if ki == 0:
                                continue
                            g = F.gens.get((i, a, ki, sign))
                            if g is None:
                                ok = False
                                break
                            term = fplin.matmul(term, g, p)
                        if not ok:
                            continue
                        acc = term if acc is None else acc + term
                    if acc is not None:
                        acc = sp.csr_matrix(acc)
                        acc.data %= p
                        acc.eliminate_zeros()
                        if acc.nnz:
                            gens[(0, a, k, sign)] = acc
        return PolyRep(
            p, (m,), (deg,), ws, F.aux.copy(), _pack(gens, p, F.dim), labels=F.labels
        )
    if direction == "split":
        if F.nvars != 1:
            raise ValueError("split needs a one-variable rep")
        if groups is None or sum(groups) != F.ms[0]:
            raise ValueError("groups must partition the %d slots" % F.ms[0])
        offs = np.cumsum([0] + list(groups))
        ws = []
        for w in F.weights:
            row = w[0]
            ws.append(
                tuple(
                    tuple(row[offs[i] : offs[i + 1]]) for i in range(len(groups))
                )
            )
        gens = {}
        for (i, a, k, sign), g in F.gens.items():
            for v in range(len(groups)):
                if offs[v] <= a and a + 1 < offs[v + 1]:
                    gens[(v, a - offs[v], k, sign)] = g.copy()
        return PolyRep(
            p,
            tuple(groups),
            (None,) * len(groups),
            ws,
            F.aux.copy(),
            _pack(gens, p, F.dim),
            labels=F.labels,
        )
    raise ValueError("direction must be 'merge' or 'split'")


def spin(A, seed_vectors):
    """Close the span of the seeds under all generators.

    Returns a dict (multiweight, aux) -> EchelonBasis over the ambient
    coordinates of A.  Seeds must be homogeneous in weight and aux.
    """
    blocks = {}

    def block_of(w, g):
        key = (w, int(g))
        if key not in blocks:
            blocks[key] = fplin.EchelonBasis(A.dim, A.p)
        return blocks[key]

    frontier = []
    for v in seed_vectors:
        v = np.asarray(v, dtype=np.int64) % A.p
        nz = np.nonzero(v)[0]
        if not len(nz):
            continue
        w = A.weights[nz[0]]
        g = A.aux[nz[0]]
        assert all(A.weights[j] == w and A.aux[j] == g for j in nz), (
            "spin seeds must be weight and aux homogeneous"
        )
        added = block_of(w, g).insert(v[None, :])
        if added[0] is not None:
            frontier.append((w, g, v))
    keys = A.gen_keys()
    while frontier:
        new_frontier = []
        # group the frontier by (weight, aux) so generator applications batch
        grouped = {}
        for w, g, v in frontier:
            grouped.setdefault((w, g), []).append(v)
        for (w, g), vecs in grouped.items():
            V = np.stack(vecs, axis=1)
            for key in keys:
                if A.gens.get(key) is None:
                    continue
                w2 = A.shifted_weight(w, key)
                if w2 is None:
                    continue
                out = A.apply_gen(key, V)
                if not out.any():
                    continue
                eb = block_of(w2, g)
                added = eb.insert(out.T)
                for r, j in enumerate(added):
                    if j is not None:
                        new_frontier.append((w2, g, out[:, r].copy()))
        frontier = new_frontier
    return {k: b for k, b in blocks.items() if b.dim}


def submodule(A, seed_vectors):
    """The submodule generated by the seeds, as a PolyRep plus the inclusion
    matrix (dim A x dim sub) whose columns are the new basis vectors."""
    blocks = spin(A, seed_vectors)
    cols = []
    ws = []
    aux = []
    def _desc(key):
        w, g = key
        return (tuple(tuple(-x for x in row) for row in w), g)

    for (w, g) in sorted(blocks, key=_desc):
        eb = blocks[(w, g)]
        for row in eb.rows:
            cols.append(row)
            ws.append(w)
            aux.append(g)
    if not cols:
        incl = np.zeros((A.dim, 0), dtype=np.int64)
        return (
            PolyRep(A.p, A.ms, A.degrees, [], np.zeros(0), {}, labels=[]),
            incl,
        )
    incl = np.stack(cols, axis=1)
    sub = _restrict_to_columns(A, incl, ws, aux)
    return sub, incl


def _restrict_to_columns(A, incl, ws, aux):
    """Module structure on the span of the columns of incl (assumed closed
    under the action and echelonized blockwise)."""
    n = incl.shape[1]
    ws = list(ws)
    aux = np.asarray(aux, dtype=np.int64)
    col_blocks = {}
    for j in range(n):
        col_blocks.setdefault((ws[j], int(aux[j])), []).append(j)
    ebs = {}
    for key, ix in col_blocks.items():
        eb = fplin.EchelonBasis(A.dim, A.p)
        added = eb.insert(incl[:, ix].T)
        assert all(r is not None for r in added)
        ebs[key] = (eb, ix)
    gens = {}
    for key in A.gen_keys():
        if A.gens.get(key) is None:
            continue
        mat = sp.dok_matrix((n, n), dtype=np.int64)
        any_entry = False
        for (w, g), ix in col_blocks.items():
            w2 = A.shifted_weight(w, key)
            if w2 is None or (w2, g) not in ebs:
                out = A.apply_gen(key, incl[:, ix])
                assert not out.any(), "submodule not closed under action"
                continue
            out = A.apply_gen(key, incl[:, ix])
            eb2, ix2 = ebs[(w2, g)]
            for c_local, j in enumerate(ix):
                coords = eb2.coordinates(out[:, c_local])
                assert coords is not None, "submodule not closed under action"
                for r_local, cval in enumerate(coords):
                    if cval:
                        mat[ix2[r_local], j] = cval
                        any_entry = True
        if any_entry:
            gens[key] = mat
    return PolyRep(A.p, A.ms, A.degrees, ws, aux, _pack(gens, A.p, n))


def comultiplication_map(A, d, split):
    """Matrix of Delta: Gamma^d(A) -> Gamma^a(A) (x) Gamma^b(A) on multiset
    bases, where split = (a, b): q_M -> sum over ordered decompositions
    M = M1 + M2 with |M1| = a."""
    a, b = split
    if a + b != d:
        raise ValueError("split must sum to d")
    G = divided_power(A, d)
    Ga = divided_power(A, a)
    Gb = divided_power(A, b)
    ia = {m: i for i, m in enumerate(Ga.labels)}
    ib = {m: i for i, m in enumerate(Gb.labels)}
    mat = sp.dok_matrix((Ga.dim * Gb.dim, G.dim), dtype=np.int64)
    for c, M in enumerate(G.labels):
        for sub in set(itertools.combinations(M, a)):
            rest = list(M)
            for x in sub:
                rest.remove(x)
            r = ia[tuple(sorted(sub))] * Gb.dim + ib[tuple(rest)]
            mat[r, c] = 1
    return sp.csr_matrix(mat)


def multiplication_map(A, d, split):
    """Matrix of the divided-power multiplication Gamma^a (x) Gamma^b ->
    Gamma^d: q_M1 (x) q_M2 -> prod_z binom(M(z); M1(z)) q_{M1+M2}."""
    a, b = split
    if a + b != d:
        raise ValueError("split must sum to d")
    G = divided_power(A, d)
    Ga = divided_power(A, a)
    Gb = divided_power(A, b)
    ig = {m: i for i, m in enumerate(G.labels)}
    mat = sp.dok_matrix((G.dim, Ga.dim * Gb.dim), dtype=np.int64)
    for i1, M1 in enumerate(Ga.labels):
        for i2, M2 in enumerate(Gb.labels):
            merged = tuple(sorted(M1 + M2))
            coeff = 1
            c1 = wt.content(M1, A.dim)
            cm = wt.content(merged, A.dim)
            for z in range(A.dim):
                coeff *= comb(cm[z], c1[z])
            mat[ig[merged], i1 * Gb.dim + i2] = coeff % A.p
    return sp.csr_matrix(mat)


def validate(rep, full=False):
    """Check the representation invariants; raises AssertionError on failure."""
    p = rep.p
    assert len(rep.weights) == rep.dim and len(rep.aux) == rep.dim
    for w in rep.weights:
        assert len(w) == rep.nvars
        for i, row in enumerate(w):
            assert len(row) == rep.ms[i]
            if rep.degrees[i] is not None:
                assert sum(row) == rep.degrees[i]
    eff = [_eff_degree(rep, i) for i in range(rep.nvars)]
    for key, g in rep.gens.items():
        i, a, k, sign = key
        assert 1 <= k <= eff[i] and 0 <= a < rep.ms[i] - 1
        g = sp.coo_matrix(g)
        assert g.shape == (rep.dim, rep.dim)
        for r, c, v in zip(g.row, g.col, g.data):
            assert 0 < v < p, "entries must be reduced mod p and nonzero"
            assert rep.weights[r] == rep.shifted_weight(rep.weights[c], key), (
                "weight shift violated by %r" % (key,)
            )
            assert rep.aux[r] == rep.aux[c], "aux grading not preserved"
    dim = rep.dim
    for i, m in enumerate(rep.ms):
        for a in range(m - 1):
            e1 = fplin.to_dense(rep.gens.get((i, a, 1, 1), sp.csr_matrix((dim, dim), dtype=np.int64)), p)
            f1 = fplin.to_dense(rep.gens.get((i, a, 1, -1), sp.csr_matrix((dim, dim), dtype=np.int64)), p)
            commutator = (e1 @ f1 - f1 @ e1) % p
            h = np.array(
                [(w[i][a] - w[i][a + 1]) % p for w in rep.weights], dtype=np.int64
            )
            assert (commutator == np.diag(h)).all(), "commutator law fails at root %d,%d" % (i, a)
            ek = e1.copy()
            fk = f1.copy()
            for k in range(2, min(p, eff[i] + 1)):
                ek = (ek @ e1) % p
                fk = (fk @ f1) % p
                fac = factorial(k) % p
                for mat_pow, stored_key in ((ek, (i, a, k, 1)), (fk, (i, a, k, -1))):
                    stored = fplin.to_dense(
                        rep.gens.get(stored_key, sp.csr_matrix((dim, dim), dtype=np.int64)), p
                    )
                    assert (mat_pow == (fac * stored) % p).all(), (
                        "divided power law fails for %r" % (stored_key,)
                    )
            if full:
                for j in range(1, eff[i] + 1):
                    for k in range(1, eff[i] + 1 - j):
                        for sign in (1, -1):
                            gj = rep.gens.get((i, a, j, sign))
                            gk = rep.gens.get((i, a, k, sign))
                            gjk = rep.gens.get((i, a, j + k, sign))
                            lhs = np.zeros((dim, dim), dtype=np.int64)
                            if gj is not None and gk is not None:
                                lhs = fplin.to_dense((gj @ gk), p)
                            rhs = np.zeros((dim, dim), dtype=np.int64)
                            if gjk is not None:
                                rhs = (comb(j + k, j) % p) * fplin.to_dense(gjk, p) % p
                            assert (lhs == rhs).all(), (
                                "composition law fails at root %d,%d (%d,%d,%+d)"
                                % (i, a, j, k, sign)
                            )
    return True
