"""Projective resolutions and Ext groups.

Projectives are tensor products of divided powers of standards: a Summand
records, per variable, which slots carry which divided-power degrees, so its
realized basis is a product of sorted multisets and its Yoneda generator is
the pure-power product gamma = (x)_f q_{slot^deg}.  Maps out of a summand are
determined by the image of gamma (the Yoneda value); three devices turn
Yoneda values into matrices:

* summand -> summand (resolution differentials): the split-merge expansion.
  An equivariant map Gamma^nu -> Gamma^kappa with generator value a basis
  vector (N_g) acts on q_{(M_f)} by splitting each M_f across the target
  factors according to the letter counts of (N_g) and merging columnwise with
  divided-power multinomial coefficients.  This is pure multiset
  combinatorics, no linear algebra.
* summand -> module (augmentations): a paired spin.  Starting from
  (gamma, v) the generator action is applied to both sides; echelon
  reduction on the summand side mirrors every row operation on the module
  side, which yields the full matrix blockwise and detects unsolvable
  covers.
* summand -> module values for Ext differentials: the module is embedded
  into a sum of symmetric powers (the transpose of a projective cover of its
  dual), where the analogous split-convert-merge expansion evaluates maps at
  single vectors cheaply.

Everything is graded by (multiweight, aux); all matrices respect the grading
and all kernels are computed blockwise.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial

import numpy as np
import scipy.sparse as sp

from . import fplin, polyrep, weights as wt


class ResourceGuard(RuntimeError):
    """A layer exceeded the configured size bound."""

    def __init__(self, message, dim, bound):
        super().__init__(message)
        self.dim = dim
        self.bound = bound


class CoverError(RuntimeError):
    """Internal inconsistency while building a cover (faithfulness loss)."""


DEFAULT_MAX_LAYER_DIM = 200000


# ---------------------------------------------------------------------------
# summands and layers


@lru_cache(maxsize=None)
def _gamma_factor(p, m, c):
    """Gamma^c(k^m) with its multiset basis, cached."""
    return polyrep.divided_power(polyrep.standard(p, m), c)


@lru_cache(maxsize=None)
def _multiset_index(m, c):
    return {t: i for i, t in enumerate(wt.multisets(m, c))}


def _split_multiset(M, sizes):
    """All ways to split the sorted tuple M into ordered parts of the given
    sizes; parts returned as sorted tuples.  Cached on (M, sizes)."""
    return _split_multiset_cached(tuple(M), tuple(sizes))


@lru_cache(maxsize=None)
def _split_multiset_cached(M, sizes):
    if not sizes:
        return [()] if not M else []
    letters = sorted(set(M))
    counts = [M.count(z) for z in letters]

    out = []

    def rec(i, remaining_counts, acc_parts):
        if i == len(sizes):
            if all(c == 0 for c in remaining_counts):
                out.append(tuple(acc_parts))
            return
        size = sizes[i]

        def pick(j, left, taken, rem):
            if j == len(letters):
                if left == 0:
                    part = tuple(
                        sorted(
                            itertools.chain.from_iterable(
                                [letters[t]] * taken[t] for t in range(len(letters))
                            )
                        )
                    )
                    rec(i + 1, rem, acc_parts + [part])
                return
            for take in range(min(left, rem[j]) + 1):
                pick(
                    j + 1,
                    left - take,
                    taken + [take],
                    rem[:j] + [rem[j] - take] + rem[j + 1 :],
                )

        pick(0, size, [], list(remaining_counts))

    rec(0, counts, [])
    return out


class Summand:
    """One projective summand: per variable, ((slot, deg), ...) with strictly
    increasing slots.  The realized basis is the product of the multiset
    bases of the factors, variable-major then factor-major."""

    def __init__(self, p, ms, parts, aux_offset=0):
        self.p = p
        self.ms = tuple(ms)
        self.parts = tuple(tuple(v) for v in parts)
        self.aux_offset = int(aux_offset)
        if len(self.parts) != len(self.ms):
            raise ValueError("need one parts tuple per variable")
        for v, fac in enumerate(self.parts):
            slots = [s for s, c in fac]
            if slots != sorted(set(slots)):
                raise ValueError("slots must be strictly increasing")
            if any(c < 1 for s, c in fac) or any(
                not 0 <= s < self.ms[v] for s, c in fac
            ):
                raise ValueError("bad slot or degree in %r" % (fac,))
        self.factor_vars = []
        self.factor_slots = []
        self.factor_degs = []
        for v, fac in enumerate(self.parts):
            for s, c in fac:
                self.factor_vars.append(v)
                self.factor_slots.append(s)
                self.factor_degs.append(c)
        self.factor_dims = [
            wt.n_multisets(self.ms[v], c)
            for v, c in zip(self.factor_vars, self.factor_degs)
        ]
        self.dim = 1
        for d in self.factor_dims:
            self.dim *= d
        self.strides = []
        acc = self.dim
        for d in self.factor_dims:
            acc //= d
            self.strides.append(acc)
        self.factor_bases = [
            wt.multisets(self.ms[v], c)
            for v, c in zip(self.factor_vars, self.factor_degs)
        ]

    @classmethod
    def from_weight(cls, p, ms, w, aux_offset=0):
        parts = []
        for v, row in enumerate(w):
            parts.append(tuple((j, c) for j, c in enumerate(row) if c > 0))
        return cls(p, ms, parts, aux_offset)

    @property
    def weight(self):
        w = []
        for v, m in enumerate(self.ms):
            row = [0] * m
            for s, c in self.parts[v]:
                row[s] += c
            w.append(tuple(row))
        return tuple(w)

    def degrees(self):
        out = [0] * len(self.ms)
        for v, fac in enumerate(self.parts):
            out[v] = sum(c for s, c in fac)
        return tuple(out)

    def key(self):
        return (self.p, self.ms, self.parts)

    def generator_index(self):
        """Index of gamma = (x)_f q_{(slot,)*deg}."""
        idx = 0
        for f, (s, c, stride) in enumerate(
            zip(self.factor_slots, self.factor_degs, self.strides)
        ):
            local = _multiset_index(self.ms[self.factor_vars[f]], c)[(s,) * c]
            idx += local * stride
        return idx

    def decode(self, idx):
        """Factor multisets of a basis index."""
        return [
            self.factor_bases[f][(idx // self.strides[f]) % self.factor_dims[f]]
            for f in range(len(self.factor_dims))
        ]

    def weight_rows(self):
        """(dim, sum(ms)) array of concatenated weight rows, vectorized."""
        total_m = sum(self.ms)
        var_off = np.cumsum([0] + list(self.ms))[:-1]
        rows = np.zeros((self.dim, total_m), dtype=np.int64)
        ar = np.arange(self.dim)
        for f in range(len(self.factor_dims)):
            base = self.factor_bases[f]
            m = self.ms[self.factor_vars[f]]
            contents = np.zeros((len(base), m), dtype=np.int64)
            for i, ms_tuple in enumerate(base):
                for z in ms_tuple:
                    contents[i, z] += 1
            fidx = (ar // self.strides[f]) % self.factor_dims[f]
            off = var_off[self.factor_vars[f]]
            rows[:, off : off + m] += contents[fidx]
        return rows

    def apply_gen(self, key, V):
        """Generator action on column vectors (dim, batch) without
        materializing the product matrix: sum over distributions of the
        divided power across this variable's factors, applied legwise."""
        var, a, k, sign = key
        V = np.asarray(V, dtype=np.int64)
        single = V.ndim == 1
        if single:
            V = V[:, None]
        fs = [f for f in range(len(self.factor_dims)) if self.factor_vars[f] == var]
        out = np.zeros_like(V)
        for combo in _compositions_of(k, len(fs)):
            term = V
            ok = True
            for f, kf in zip(fs, combo):
                if kf == 0:
                    continue
                gd = _gamma_gen_dense(
                    self.p, self.ms[var], self.factor_degs[f], (0, a, kf, sign)
                )
                if gd is None:
                    ok = False
                    break
                term = self._apply_leg(term, f, gd)
            if ok:
                out = (out + term) % self.p
        return out[:, 0] if single else out

    def _apply_leg(self, V, f, gd):
        pre = 1
        for d in self.factor_dims[:f]:
            pre *= d
        nf = self.factor_dims[f]
        post = self.dim // (pre * nf)
        batch = V.shape[1]
        t = V.reshape(pre, nf, post * batch)
        t = np.tensordot(gd, t, axes=(1, 1)) % self.p  # (nf, pre, post*batch)
        t = t.transpose(1, 0, 2).reshape(self.dim, batch)
        return t


@lru_cache(maxsize=None)
def _compositions_of(k, parts):
    if parts == 0:
        return [()] if k == 0 else []
    return [tuple(c) for c in wt.compositions(k, parts)]


@lru_cache(maxsize=None)
def _gamma_gen_dense(p, m, deg, key):
    """Dense generator matrix of Gamma^deg on k^m, or None if absent."""
    g = _gamma_factor(p, m, deg).gens.get(key)
    if g is None:
        return None
    out = fplin.to_dense(g, p)
    out.setflags(write=False)
    return out


class ProjectiveLayer:
    """A finite direct sum of summand copies with aux offsets."""

    def __init__(self, p, ms, summands):
        self.p = p
        self.ms = tuple(ms)
        self.summands = list(summands)
        self.offsets = np.cumsum([0] + [s.dim for s in self.summands])
        self.dim = int(self.offsets[-1]) if self.summands else 0
        self._blocks = None
        self._aux = None

    @property
    def aux(self):
        if self._aux is None:
            self._aux = np.concatenate(
                [np.full(s.dim, s.aux_offset, dtype=np.int64) for s in self.summands]
            ) if self.summands else np.zeros(0, dtype=np.int64)
        return self._aux

    def gen_keys(self):
        keys = []
        degs = [0] * len(self.ms)
        for s in self.summands:
            for v, d in enumerate(s.degrees()):
                degs[v] = max(degs[v], d)
        for v, m in enumerate(self.ms):
            for a in range(m - 1):
                for k in range(1, degs[v] + 1):
                    keys.append((v, a, k, 1))
                    keys.append((v, a, k, -1))
        return keys

    def apply_gen(self, key, V):
        V = np.asarray(V, dtype=np.int64)
        single = V.ndim == 1
        if single:
            V = V[:, None]
        out = np.zeros_like(V)
        for i, s in enumerate(self.summands):
            lo, hi = self.offsets[i], self.offsets[i + 1]
            seg = V[lo:hi]
            if seg.any():
                out[lo:hi] = s.apply_gen(key, seg)
        return out[:, 0] if single else out

    def weight_blocks(self):
        """dict (multiweight, aux) -> global index array."""
        if self._blocks is None:
            blocks = {}
            for i, s in enumerate(self.summands):
                rows = s.weight_rows()
                uniq, inv = np.unique(rows, axis=0, return_inverse=True)
                for u in range(len(uniq)):
                    w = _split_weight(tuple(uniq[u]), self.ms)
                    ix = np.nonzero(inv == u)[0] + self.offsets[i]
                    key = (w, s.aux_offset)
                    if key in blocks:
                        blocks[key] = np.concatenate([blocks[key], ix])
                    else:
                        blocks[key] = ix
            self._blocks = blocks
        return self._blocks

    def generator_indices(self):
        return [
            int(self.offsets[i] + s.generator_index())
            for i, s in enumerate(self.summands)
        ]

    def copy_of(self, global_idx):
        i = int(np.searchsorted(self.offsets, global_idx, side="right")) - 1
        return i, int(global_idx - self.offsets[i])

    def shifted_weight(self, w, key):
        var, a, k, sign = key
        row = list(w[var])
        row[a] += sign * k
        row[a + 1] -= sign * k
        if row[a] < 0 or row[a + 1] < 0:
            return None
        return w[:var] + (tuple(row),) + w[var + 1 :]


def _split_weight(flat, ms):
    out = []
    pos = 0
    for m in ms:
        out.append(tuple(int(x) for x in flat[pos : pos + m]))
        pos += m
    return tuple(out)


# ---------------------------------------------------------------------------
# split-merge assembly: summand -> summand maps from Yoneda values


def _merge_coeff_gamma(parts, m):
    """Divided-power merge coefficient: product over letters of the
    multinomial of the letter counts of the parts."""
    total = [0] * m
    for part in parts:
        for z in part:
            total[z] += 1
    coeff = 1
    for part in parts:
        cnt = [0] * m
        for z in part:
            cnt[z] += 1
        for z in range(m):
            if cnt[z]:
                coeff *= comb(total[z], cnt[z])
                total[z] -= cnt[z]
    return coeff


def _merge_coeff_sym(pieces):
    """Conversion coefficient for the symmetric-power target: each split
    piece maps through Gamma -> S with a word-count multinomial."""
    coeff = 1
    for piece in pieces:
        seen = {}
        for z in piece:
            seen[z] = seen.get(z, 0) + 1
        f = factorial(len(piece))
        for v in seen.values():
            f //= factorial(v)
        coeff *= f
    return coeff


def _yoneda_terms(src, dst, v_items):
    """Preprocess a Yoneda value into split-size terms.

    Each v_item (dst_index, coeff) decodes into, per source factor, the
    multiset of sizes its letters occupy inside each destination factor
    (zero across variables).  Terms whose sizes cannot add up to the source
    factor degrees are dropped.
    """
    terms = []
    for dst_idx, coeff in v_items:
        targets = dst.decode(dst_idx)
        sizes = []
        valid = True
        for f_src in range(len(src.factor_dims)):
            v = src.factor_vars[f_src]
            s = src.factor_slots[f_src]
            row = []
            for f_dst in range(len(dst.factor_dims)):
                if dst.factor_vars[f_dst] != v:
                    row.append(0)
                else:
                    row.append(sum(1 for z in targets[f_dst] if z == s))
            if sum(row) != src.factor_degs[f_src]:
                valid = False
                break
            sizes.append(tuple(row))
        if valid:
            terms.append((tuple(sizes), coeff))
    return terms


def _yoneda_column(src, dst, terms, dst_index_maps, x, p, sym_target):
    """One column of the split-merge expansion: dict dst_index -> coeff."""
    col = {}
    Ms = src.decode(x)
    n_dst = len(dst.factor_dims)
    for sizes, coeff_T in terms:
        splittings_per_factor = [
            _split_multiset(Ms[f], sizes[f]) for f in range(len(Ms))
        ]
        if any(not s for s in splittings_per_factor):
            continue
        for choice in itertools.product(*splittings_per_factor):
            coeff = coeff_T
            tgt_idx = 0
            for g in range(n_dst):
                pieces = [choice[f][g] for f in range(len(Ms)) if sizes[f][g]]
                merged = tuple(sorted(itertools.chain.from_iterable(pieces)))
                if sym_target:
                    coeff *= _merge_coeff_sym(pieces)
                else:
                    coeff *= _merge_coeff_gamma(pieces, dst.ms[dst.factor_vars[g]])
                coeff %= p
                tgt_idx += dst_index_maps[g][merged] * dst.strides[g]
            if coeff:
                col[tgt_idx] = (col.get(tgt_idx, 0) + coeff) % p
    return {r: c for r, c in col.items() if c}


def _dst_index_maps(dst):
    return [
        _multiset_index(dst.ms[dst.factor_vars[f]], dst.factor_degs[f])
        for f in range(len(dst.factor_dims))
    ]


def yoneda_block(src, dst, v_items, sym_target=False):
    """Matrix (dst.dim x src.dim) of the equivariant map src -> dst whose
    generator value is the combination of dst basis vectors in v_items
    (list of (dst_index, coeff)).

    With sym_target=True the destination summand is read as a product of
    symmetric powers instead of divided powers (same multiset bases); this is
    used for evaluating maps into embedded modules.
    """
    p = src.p
    terms = _yoneda_terms(src, dst, v_items)
    if not terms:
        return sp.csr_matrix((dst.dim, src.dim), dtype=np.int64)
    maps = _dst_index_maps(dst)
    rows, cols, data = [], [], []
    for x in range(src.dim):
        col = _yoneda_column(src, dst, terms, maps, x, p, sym_target)
        for r, c in col.items():
            rows.append(r)
            cols.append(x)
            data.append(c)
    return sp.coo_matrix(
        (data, (rows, cols)), shape=(dst.dim, src.dim), dtype=np.int64
    ).tocsr()


def yoneda_value_at(src, dst, v_items, x_items, sym_target=False):
    """Value of the map defined by v_items at a single source vector given as
    a list of (src_index, coeff); returns dict dst_index -> coeff."""
    p = src.p
    terms = _yoneda_terms(src, dst, v_items)
    if not terms:
        return {}
    maps = _dst_index_maps(dst)
    out = {}
    for (x, c) in x_items:
        col = _yoneda_column(src, dst, terms, maps, x, p, sym_target)
        for r, cv in col.items():
            out[r] = (out.get(r, 0) + c * cv) % p
    return {r: c for r, c in out.items() if c}


# ---------------------------------------------------------------------------
# paired echelon spin: summand -> module covers


class PairEchelon:
    """Row echelon on x-vectors with every row operation mirrored on paired
    y-vectors.  Maintains reduced form so batch reduction is one matmul."""

    def __init__(self, nx, ny, p):
        self.nx = nx
        self.ny = ny
        self.p = p
        self.X = np.zeros((0, nx), dtype=np.int64)
        self.Y = np.zeros((0, ny), dtype=np.int64)
        self.pivots = []

    @property
    def dim(self):
        return len(self.pivots)

    def insert(self, Xb, Yb):
        """Insert batch rows; returns list of booleans (accepted).  Raises
        CoverError if an x-relation has a nonzero mirrored y-value."""
        p = self.p
        Xb = np.asarray(Xb, dtype=np.int64) % p
        Yb = np.asarray(Yb, dtype=np.int64) % p
        accepted = []
        for i in range(Xb.shape[0]):
            x = Xb[i].copy()
            y = Yb[i].copy()
            if self.pivots:
                c = x[self.pivots]
                if c.any():
                    x = (x - c @ self.X) % p
                    y = (y - c @ self.Y) % p
            nz = np.nonzero(x)[0]
            if not len(nz):
                if y.any():
                    raise CoverError(
                        "generator value admits no equivariant extension"
                    )
                accepted.append(False)
                continue
            lead = nz[0]
            inv = fplin.pinv(int(x[lead]), p)
            x = (x * inv) % p
            y = (y * inv) % p
            if self.pivots:
                col = self.X[:, lead].copy()
                if col.any():
                    self.X = (self.X - np.outer(col, x)) % p
                    self.Y = (self.Y - np.outer(col, y)) % p
            self.X = np.vstack([self.X, x[None, :]])
            self.Y = np.vstack([self.Y, y[None, :]])
            self.pivots.append(int(lead))
            accepted.append(True)
        return accepted


def cover_matrix(summand, module, v):
    """Matrix (module.dim x summand.dim) of the equivariant map sending the
    summand's Yoneda generator to v, built by paired spin.  The module is
    anything exposing p, dim, weight_blocks(), apply_gen, gen_keys."""
    p = summand.p
    rows = summand.weight_rows()
    blocks = {}
    uniq, inv = np.unique(rows, axis=0, return_inverse=True)
    local_index = {}
    for u in range(len(uniq)):
        w = _split_weight(tuple(uniq[u]), summand.ms)
        ix = np.nonzero(inv == u)[0]
        local_index[w] = ix
        blocks[w] = PairEchelon(len(ix), module.dim, p)

    gen_idx = summand.generator_index()
    w0 = _split_weight(tuple(rows[gen_idx]), summand.ms)
    x0 = np.zeros(summand.dim, dtype=np.int64)
    x0[gen_idx] = 1
    v = np.asarray(v, dtype=np.int64) % p
    # Yoneda: an extension exists iff the value sits in the module's
    # w0 weight rows (any aux)
    if v.any():
        mask = np.zeros(module.dim, dtype=bool)
        mask[_weight_rows_of(module, w0)] = True
        if v[~mask].any():
            raise CoverError(
                "generator value admits no equivariant extension"
            )
    blocks[w0].insert(x0[local_index[w0]][None, :], v[None, :])
    frontier = [(w0, x0, v)]
    keys = [k for k in _summand_gen_keys(summand)]
    while frontier:
        grouped = {}
        for w, x, y in frontier:
            grouped.setdefault(w, []).append((x, y))
        frontier = []
        for w, pairs in grouped.items():
            X = np.stack([x for x, y in pairs], axis=1)
            Y = np.stack([y for x, y in pairs], axis=1)
            for key in keys:
                w2 = _shift_weight(w, key)
                if w2 is None:
                    continue
                if w2 in blocks:
                    eb = blocks[w2]
                    if eb.dim == len(local_index[w2]):
                        # block already spans; images of its rows were
                        # frontier members when accepted, so closure is
                        # unaffected by skipping
                        continue
                    Yo = module.apply_gen(key, Y)
                    Xo = summand.apply_gen(key, X)
                    if not Xo.any() and not Yo.any():
                        continue
                    acc = eb.insert(Xo[local_index[w2]].T, Yo.T)
                    for i, ok in enumerate(acc):
                        if ok:
                            frontier.append(
                                (w2, Xo[:, i].copy(), Yo[:, i].copy())
                            )
                else:
                    # the summand side vanishes structurally here, so the
                    # module side must as well
                    Yo = module.apply_gen(key, Y)
                    if Yo.any():
                        raise CoverError(
                            "generator value admits no equivariant extension"
                        )
    mat = np.zeros((module.dim, summand.dim), dtype=np.int64)
    for w, eb in blocks.items():
        ix = local_index[w]
        if eb.dim != len(ix):
            raise CoverError(
                "spin failed to span the %r block (%d of %d)"
                % (w, eb.dim, len(ix))
            )
        Xinv = fplin.inverse(eb.X, p)
        mat[:, ix] = (Xinv @ eb.Y).T % p
    return sp.csr_matrix(mat)


def _weight_rows_of(module, w):
    """Indices of a module's weight-w rows, across all aux degrees.  Layer
    blocks are keyed (weight, aux) with an integer last component, PolyRep
    blocks by the bare multiweight."""
    blocks = module.weight_blocks()
    out = []
    for k, ix in blocks.items():
        if isinstance(k[-1], (int, np.integer)):
            if k[0] == w:
                out.append(ix)
        elif k == w:
            out.append(ix)
    return (
        np.concatenate(out) if out else np.zeros(0, dtype=np.int64)
    )


def _summand_gen_keys(summand):
    degs = summand.degrees()
    keys = []
    for v, m in enumerate(summand.ms):
        for a in range(m - 1):
            for k in range(1, degs[v] + 1):
                keys.append((v, a, k, 1))
                keys.append((v, a, k, -1))
    return keys


def _shift_weight(w, key):
    var, a, k, sign = key
    row = list(w[var])
    row[a] += sign * k
    row[a + 1] -= sign * k
    if row[a] < 0 or row[a + 1] < 0:
        return None
    return w[:var] + (tuple(row),) + w[var + 1 :]


# ---------------------------------------------------------------------------
# minimal generators

# Largest ambient dimension on which the quadratic irredundancy pass still
# runs; above it the greedy forward cover is kept as is.
BACKWARD_LIMIT = 4000


def _module_blocks(module):
    """(multiweight, aux) -> index array for a PolyRep."""
    blocks = {}
    for idx, w in enumerate(module.weights):
        key = (w, int(module.aux[idx]))
        blocks.setdefault(key, []).append(idx)
    return {k: np.array(v, dtype=np.int64) for k, v in blocks.items()}


def _ambient_blocks(ambient):
    if isinstance(ambient, ProjectiveLayer):
        return ambient.weight_blocks()
    return _module_blocks(ambient)


def _cover_dim(w, ms):
    d = 1
    for row, m in zip(w, ms):
        for c in row:
            d *= comb(m + c - 1, c)
    return d


def minimal_generators(ambient, candidates=None, local=False):
    """Greedy minimum-cardinality generating set.

    ambient: a PolyRep or ProjectiveLayer.  candidates: list of
    (weight, aux, vector); defaults to the standard basis.  Vectors are
    full-coordinate unless local=True, in which case they are given in the
    coordinates of their own (weight, aux) block.  Weight vectors are
    supported inside their block, so all spinning happens block-locally and
    full vectors exist only transiently while a generator is applied.
    Candidates are tried in order of ascending cover dimension, then
    canonical weight order, and a kept candidate is dropped afterwards if it
    lies in the submodule generated by the others (backward pass).
    """
    p = ambient.p
    ms = ambient.ms
    blocks = _ambient_blocks(ambient)
    cand = []
    if candidates is None:
        for (w, a), ix in blocks.items():
            for i in range(len(ix)):
                e = np.zeros(len(ix), dtype=np.int64)
                e[i] = 1
                cand.append((w, a, e))
    else:
        for (w, a, v) in candidates:
            v = np.asarray(v, dtype=np.int64)
            cand.append((w, a, v if local else v[blocks[(w, a)]]))
    order = sorted(
        range(len(cand)),
        key=lambda i: (
            _cover_dim(cand[i][0], ms),
            tuple(tuple(-x for x in row) for row in cand[i][0]),
            cand[i][1],
            i,
        ),
    )
    keys = ambient.gen_keys()

    def block_insert(span, key, vecs_loc):
        eb = span.get(key)
        if eb is None:
            eb = fplin.EchelonBasis(len(blocks[key]), p)
            span[key] = eb
        V = np.asarray(vecs_loc, dtype=np.int64)
        if V.ndim == 1:
            V = V[None, :]
        return eb.insert(V % p)

    def spin_into(span, seed_list):
        """Close span (mutated in place) under the generator action."""
        frontier = []
        for (w, a, v) in seed_list:
            added = block_insert(span, (w, a), v)
            if added and added[0] is not None:
                frontier.append((w, a, v))
        chunk = max(1, 2_000_000 // max(ambient.dim, 1))
        while frontier:
            grouped = {}
            for w, a, v in frontier:
                grouped.setdefault((w, a), []).append(v)
            frontier = []
            for (w, a), vecs in grouped.items():
                ix = blocks[(w, a)]
                for lo in range(0, len(vecs), chunk):
                    part = vecs[lo : lo + chunk]
                    V = np.zeros((ambient.dim, len(part)), dtype=np.int64)
                    V[ix] = np.stack(part, axis=1)
                    for key in keys:
                        w2 = _shift_weight(w, key)
                        if w2 is None or (w2, a) not in blocks:
                            continue
                        eb2 = span.get((w2, a))
                        ix2 = blocks[(w2, a)]
                        if eb2 is not None and eb2.dim == len(ix2):
                            # target block spans already; its rows carried
                            # the closure forward when they were accepted
                            continue
                        out = ambient.apply_gen(key, V)[ix2]
                        if not out.any():
                            continue
                        added = block_insert(span, (w2, a), out.T)
                        for i, r in enumerate(added):
                            if r is not None:
                                frontier.append((w2, a, out[:, i].copy()))
        return span

    def contains(span, key, v_loc):
        eb = span.get(key)
        if eb is None:
            return not v_loc.any()
        return eb.contains(v_loc % p)

    kept = []
    span = {}
    for i in order:
        w, a, v = cand[i]
        if contains(span, (w, a), v):
            continue
        kept.append((w, a, v))
        spin_into(span, [(w, a, v)])

    def expand(w, a, v_loc):
        v = np.zeros(ambient.dim, dtype=np.int64)
        v[blocks[(w, a)]] = v_loc
        return v

    # backward pass: drop anything generated by the others.  Quadratic in
    # spins, so reserved for moderate ambients; skipping it can only leave a
    # redundant generator (a larger but still exact cover), never a wrong one.
    if ambient.dim > BACKWARD_LIMIT:
        return [(w, a, expand(w, a, v)) for (w, a, v) in kept]
    changed = True
    while changed:
        changed = False
        for j in range(len(kept)):
            others = kept[:j] + kept[j + 1 :]
            if not others:
                continue
            span_o = spin_into({}, others)
            w, a, v = kept[j]
            if contains(span_o, (w, a), v):
                kept = others
                changed = True
                break
    return [(w, a, expand(w, a, v)) for (w, a, v) in kept]


# ---------------------------------------------------------------------------
# resolutions


class Resolution:
    """Layers P_0..P_L with differentials d_i: P_i -> P_{i-1} and the
    augmentation P_0 -> M.  Yoneda values of the differentials (the images
    of the summand generators) are kept alongside."""

    def __init__(self, module, layers, diffs, aug):
        self.module = module
        self.layers = layers
        self.diffs = diffs
        self.aug = aug

    def layer_dims(self):
        return [L.dim for L in self.layers]

    def summand_weights(self):
        return [
            [(s.weight, s.aux_offset) for s in L.summands] for L in self.layers
        ]


def _kernel_blocks(matrix, col_blocks, row_blocks, p):
    """Blockwise kernel of an aux/weight-graded matrix.

    Returns list of (weight, aux, basis matrix (n_block x k), col index
    array).  matrix maps the column space to the row space; entries outside
    matching blocks must vanish.
    """
    matrix = sp.csc_matrix(matrix)
    out = []
    for (w, a), cix in sorted(
        col_blocks.items(),
        key=lambda kv: (tuple(tuple(-x for x in r) for r in kv[0][0]), kv[0][1]),
    ):
        sub = matrix[:, cix]
        rix = row_blocks.get((w, a))
        if rix is None or not len(rix):
            K = fplin.eye(len(cix))
        else:
            block = sub[rix, :].toarray() % p
            K = fplin.kernel_basis(block, p)
        if K.shape[1]:
            out.append((w, a, K, cix))
    return out


def _kernel_candidates(kernels):
    """Kernel basis columns as block-local candidate vectors.

    The column index array of each kernel block is the ambient layer's own
    weight-block index array, so the local coordinates line up with what
    minimal_generators(local=True) expects.
    """
    cands = []
    for w, a, K, cix in kernels:
        for j in range(K.shape[1]):
            cands.append((w, a, K[:, j]))
    return cands


def resolve(module, length, max_layer_dim=DEFAULT_MAX_LAYER_DIM, cache=None):
    """Projective resolution of a PolyRep module to the given length."""
    if cache is not None:
        got = cache.load(module, length)
        if got is not None:
            # loaded layers occupy the same memory as built ones, and the
            # verdict of a guarded computation must not depend on cache warmth
            for L in got.layers:
                _check_guard(L, max_layer_dim)
            return got
    p = module.p
    ms = module.ms
    mg = minimal_generators(module)
    P0 = ProjectiveLayer(
        p,
        ms,
        [Summand.from_weight(p, ms, w, aux_offset=a) for (w, a, v) in mg],
    )
    _check_guard(P0, max_layer_dim)
    aug_cols = []
    for (w, a, v), s in zip(mg, P0.summands):
        aug_cols.append(cover_matrix(s, module, v))
    aug = (
        sp.hstack(aug_cols, format="csr")
        if aug_cols
        else sp.csr_matrix((module.dim, 0), dtype=np.int64)
    )
    assert (
        _blockwise_rank(aug, P0.weight_blocks(), _module_blocks(module), p)
        == module.dim
    ), "augmentation is not surjective"
    layers = [P0]
    diffs = []
    kernels = _kernel_blocks(aug, P0.weight_blocks(), _module_blocks(module), p)
    for i in range(1, length + 1):
        prev = layers[-1]
        cands = _kernel_candidates(kernels)
        if not cands:
            layers.append(ProjectiveLayer(p, ms, []))
            diffs.append(sp.csr_matrix((prev.dim, 0), dtype=np.int64))
            kernels = []
            continue
        mg_i = minimal_generators(prev, cands, local=True)
        Pi = ProjectiveLayer(
            p,
            ms,
            [Summand.from_weight(p, ms, w, aux_offset=a) for (w, a, v) in mg_i],
        )
        _check_guard(Pi, max_layer_dim)
        d = _assemble_differential(Pi, prev, [v for (_, _, v) in mg_i])
        # the columns at the generator indices must reproduce the Yoneda
        # values; this pins the split-merge combinatorics
        for gi, (w, a, v) in zip(Pi.generator_indices(), mg_i):
            col = np.asarray(d[:, gi].todense()).ravel() % p
            assert (col == v % p).all(), "generator column mismatch"
        kdim = sum(K.shape[1] for (_, _, K, _) in kernels)
        assert _blockwise_rank(d, Pi.weight_blocks(), prev.weight_blocks(), p) == kdim, (
            "cover does not surject onto the kernel"
        )
        if diffs:
            prod = (diffs[-1] @ d)
            prod.data %= p
            prod.eliminate_zeros()
            assert prod.nnz == 0, "d o d != 0"
        else:
            prod = (aug @ d)
            prod.data %= p
            prod.eliminate_zeros()
            assert prod.nnz == 0, "aug o d_1 != 0"
        layers.append(Pi)
        diffs.append(d)
        kernels = _kernel_blocks(d, Pi.weight_blocks(), prev.weight_blocks(), p)
    res = Resolution(module, layers, diffs, aug)
    if cache is not None:
        cache.store(res)
    return res


def _check_guard(layer, bound):
    if layer.dim > bound:
        raise ResourceGuard(
            "layer dimension %d exceeds the resource guard %d"
            % (layer.dim, bound),
            layer.dim,
            bound,
        )


def _blockwise_rank(matrix, col_blocks, row_blocks, p):
    matrix = sp.csc_matrix(matrix)
    total = 0
    for (w, a), cix in col_blocks.items():
        rix = row_blocks.get((w, a))
        if rix is None or not len(rix):
            continue
        block = matrix[:, cix][rix, :].toarray() % p
        total += fplin.rank(block, p)
    return total


def _assemble_differential(src_layer, dst_layer, values):
    """Sparse matrix (dst.dim x src.dim) from the per-copy Yoneda values."""
    p = src_layer.p
    rows, cols, data = [], [], []
    for ci, (s, v) in enumerate(zip(src_layer.summands, values)):
        col_off = src_layer.offsets[ci]
        nz = np.nonzero(v)[0]
        per_copy = {}
        for g in nz:
            di, local = dst_layer.copy_of(g)
            per_copy.setdefault(di, []).append((local, int(v[g])))
        for di, items in per_copy.items():
            dsts = dst_layer.summands[di]
            block = yoneda_block(s, dsts, items)
            block = block.tocoo()
            rows.extend((block.row + dst_layer.offsets[di]).tolist())
            cols.extend((block.col + col_off).tolist())
            data.extend(block.data.tolist())
    mat = sp.coo_matrix(
        (data, (rows, cols)), shape=(dst_layer.dim, src_layer.dim), dtype=np.int64
    ).tocsr()
    mat.data %= p
    mat.eliminate_zeros()
    return mat


# ---------------------------------------------------------------------------
# Ext groups


class ExtTable:
    """Map (cohomological degree, aux degree) -> dim."""

    def __init__(self, entries=None, max_degree=None):
        self.entries = dict(entries or {})
        self.max_degree = max_degree

    def collapse(self):
        out = {}
        for (i, g), v in self.entries.items():
            out[i] = out.get(i, 0) + v
        return out

    def fold(self):
        """Collapse onto total degree i + aux."""
        out = {}
        for (i, g), v in self.entries.items():
            out[i + g] = out.get(i + g, 0) + v
        return out

    def total_dim(self):
        return sum(self.entries.values())

    def __eq__(self, other):
        if isinstance(other, ExtTable):
            return self.entries == other.entries
        return NotImplemented

    def __repr__(self):
        return "ExtTable(%r)" % (dict(sorted(self.entries.items())),)

    def to_dict(self):
        return {
            "%d,%d" % k: v for k, v in sorted(self.entries.items()) if v
        }


class ModuleEmbedding:
    """B embedded into a sum of symmetric-power summands: j is the transpose
    of a projective cover of the Kuhn dual, jinv a left inverse."""

    def __init__(self, B):
        self.B = B
        p = B.p
        Bd = polyrep.kuhn_dual(B)
        mg = minimal_generators(Bd)
        self.summands = [
            Summand.from_weight(p, B.ms, w, aux_offset=-a) for (w, a, v) in mg
        ]
        cols = [cover_matrix(s, Bd, v) for s, (w, a, v) in zip(self.summands, mg)]
        aug = (
            sp.hstack(cols, format="csr")
            if cols
            else sp.csr_matrix((B.dim, 0), dtype=np.int64)
        )
        self.j = sp.csr_matrix(aug.T)  # (dim J x dim B)
        self.offsets = np.cumsum([0] + [s.dim for s in self.summands])
        jd = self.j.toarray() % p
        self.jinv = _left_inverse(jd, B, p)

    def embed(self, b_index):
        """j applied to a standard basis vector, as per-summand item lists."""
        col = self.j[:, b_index].tocoo()
        per = {}
        for r, val in zip(col.row, col.data):
            si = int(np.searchsorted(self.offsets, r, side="right")) - 1
            per.setdefault(si, []).append((int(r - self.offsets[si]), int(val)))
        return per

    def project(self, j_dict):
        """jinv applied to a sparse J-vector given as dict index -> coeff."""
        p = self.B.p
        out = np.zeros(self.B.dim, dtype=np.int64)
        for idx, c in j_dict.items():
            out = (out + c * self.jinv[:, idx]) % p
        return out


def _left_inverse(jd, B, p):
    """Left inverse of the injective weight-block matrix j, blockwise."""
    blocks = _module_blocks(B)
    jinv = np.zeros((jd.shape[1], jd.shape[0]), dtype=np.int64)
    for (w, a), bix in blocks.items():
        sub = jd[:, bix]
        rix = np.nonzero(sub.any(axis=1))[0]
        # want L with L @ sub[rix] = I, i.e. sub[rix].T @ L.T = I
        X = fplin.solve(np.ascontiguousarray(sub[rix, :].T), fplin.eye(len(bix)), p)
        if X is None:
            raise CoverError("module embedding is not injective")
        jinv[np.ix_(bix, rix)] = X.T
    return jinv


class ExtComputation:
    """The Hom complex Hom(P_bullet, B) in generator coordinates.

    The degree-i cochain basis pairs each copy of P_i with the B basis
    vectors of the copy's weight; a cochain vector lists the generator
    values of the corresponding map P_i -> B, and the differential is
    evaluated through the symmetric-power embedding of B.  Besides the
    dimension table this exposes cocycle bases and coboundary membership,
    which the cup-product machinery builds on.
    """

    def __init__(self, A, B, max_degree, max_layer_dim=DEFAULT_MAX_LAYER_DIM,
                 cache=None, resolution=None):
        if resolution is None or len(resolution.layers) < max_degree + 2:
            resolution = resolve(
                A, max_degree + 1, max_layer_dim=max_layer_dim, cache=cache
            )
        self.A = A
        self.B = B
        self.p = A.p
        self.max_degree = max_degree
        self.resolution = resolution
        self.emb = ModuleEmbedding(B)
        p = self.p
        B_blocks = polyrep_blocks_by_weight(B)
        n_layers = min(len(resolution.layers), max_degree + 2)

        self.bases = []
        for L in resolution.layers[:n_layers]:
            basis = []
            for ci, s in enumerate(L.summands):
                for b in B_blocks.get(s.weight, []):
                    g = s.aux_offset - int(B.aux[b])
                    basis.append((ci, int(b), g))
            self.bases.append(basis)

        self.deltas = []
        for i in range(n_layers - 1):
            Lsrc = resolution.layers[i]
            Lnext = resolution.layers[i + 1]
            delta = np.zeros(
                (len(self.bases[i + 1]), len(self.bases[i])), dtype=np.int64
            )
            col_pos = {}
            for j, (ci, b, g) in enumerate(self.bases[i]):
                col_pos.setdefault(ci, []).append((j, b))
            row_pos = {}
            for j, (ci, b, g) in enumerate(self.bases[i + 1]):
                row_pos.setdefault(ci, {})[b] = j
            d = resolution.diffs[i]
            gen_idx = Lnext.generator_indices()
            for ci_next, s_next in enumerate(Lnext.summands):
                if ci_next not in row_pos:
                    continue
                v = np.asarray(d[:, gen_idx[ci_next]].todense()).ravel() % p
                per_copy = {}
                for gidx in np.nonzero(v)[0]:
                    di, local = Lsrc.copy_of(gidx)
                    per_copy.setdefault(di, []).append((local, int(v[gidx])))
                for ci_src, items in per_copy.items():
                    if ci_src not in col_pos:
                        continue
                    s_src = Lsrc.summands[ci_src]
                    for (j, b) in col_pos[ci_src]:
                        val = _phi_value(self.emb, s_src, b, items)
                        for b2, c in val.items():
                            r = row_pos[ci_next].get(int(b2))
                            if r is not None:
                                delta[r, j] = (delta[r, j] + c) % p
            self.deltas.append(delta)

    def table(self):
        entries = {}
        p = self.p
        for i in range(self.max_degree + 1):
            basis = self.bases[i]
            for g in sorted(set(g for (_, _, g) in basis)):
                cix = [j for j, (_, _, gg) in enumerate(basis) if gg == g]
                din = self.deltas[i][:, cix] if i < len(self.deltas) else None
                ker = (
                    len(cix) - fplin.rank(din, p)
                    if din is not None and din.size
                    else len(cix)
                )
                if i > 0:
                    prev_ix = [
                        j
                        for j, (_, _, gg) in enumerate(self.bases[i - 1])
                        if gg == g
                    ]
                    dout = self.deltas[i - 1][np.ix_(cix, prev_ix)]
                    im = fplin.rank(dout, p) if dout.size else 0
                else:
                    im = 0
                dim = ker - im
                if dim:
                    entries[(i, g)] = dim
        return ExtTable(entries, max_degree=self.max_degree)

    def cocycle_basis(self, i):
        """Columns spanning ker(delta_i), as vectors over bases[i]."""
        n = len(self.bases[i])
        D = self.deltas[i] if i < len(self.deltas) else None
        if D is None or not D.size:
            return fplin.eye(n)
        return fplin.kernel_basis(D, self.p)

    def is_cocycle(self, i, v):
        D = self.deltas[i] if i < len(self.deltas) else None
        if D is None or not D.size:
            return True
        return not ((D @ (np.asarray(v) % self.p)) % self.p).any()

    def is_coboundary(self, i, v):
        v = np.asarray(v, dtype=np.int64) % self.p
        if i == 0:
            return not v.any()
        D = self.deltas[i - 1]
        if not D.size:
            return not v.any()
        return fplin.rank(np.hstack([D, v[:, None]]), self.p) == fplin.rank(
            D, self.p
        )

    def classes_equal(self, i, v1, v2):
        return self.is_coboundary(
            i, (np.asarray(v1, dtype=np.int64) - np.asarray(v2)) % self.p
        )

    def positions_by_copy(self, i):
        out = {}
        for pos, (ci, b, g) in enumerate(self.bases[i]):
            out.setdefault(ci, []).append((pos, b))
        return out

    def position_index(self, i):
        return {(ci, b): pos for pos, (ci, b, g) in enumerate(self.bases[i])}

    def hom_matrix(self, v):
        """Matrix A -> B of a degree-0 cocycle.

        The generator values are extended equivariantly over P_0 and pushed
        through the augmentation; the cocycle condition makes the blockwise
        division exact.
        """
        p = self.p
        P0 = self.resolution.layers[0]
        v = np.asarray(v, dtype=np.int64) % p
        phi = np.zeros((self.B.dim, P0.dim), dtype=np.int64)
        by_copy = self.positions_by_copy(0)
        for ci, s in enumerate(P0.summands):
            val = np.zeros(self.B.dim, dtype=np.int64)
            for pos, b in by_copy.get(ci, []):
                if v[pos]:
                    val[b] = (val[b] + v[pos]) % p
            if val.any():
                cm = cover_matrix(s, self.B, val)
                phi[:, P0.offsets[ci] : P0.offsets[ci + 1]] = cm.toarray() % p
        aug = sp.csc_matrix(self.resolution.aug)
        psi = np.zeros((self.B.dim, self.A.dim), dtype=np.int64)
        blocksP = P0.weight_blocks()
        for (w, a), ixA in _module_blocks(self.A).items():
            ixP = blocksP.get((w, a))
            if ixP is None or not len(ixP):
                continue
            sub = aug[:, ixP][ixA, :].toarray() % p
            sol = fplin.solve(
                np.ascontiguousarray(sub.T), phi[:, ixP].T, p
            )
            assert sol is not None, "cocycle does not factor through aug"
            psi[:, ixA] = sol.T % p
        return psi


def ext_groups(A, B, max_degree, max_layer_dim=DEFAULT_MAX_LAYER_DIM, cache=None, resolution=None):
    """ExtTable of Ext^i(A, B) for 0 <= i <= max_degree, aux graded by
    (aux of the resolving summand) - (aux of the B basis vector)."""
    return ExtComputation(
        A, B, max_degree, max_layer_dim=max_layer_dim, cache=cache,
        resolution=resolution,
    ).table()


def polyrep_blocks_by_weight(B):
    """multiweight -> index array (all aux together)."""
    blocks = {}
    for idx, w in enumerate(B.weights):
        blocks.setdefault(w, []).append(idx)
    return {k: np.array(v, dtype=np.int64) for k, v in blocks.items()}


def _phi_value(emb, summand, b_index, x_items):
    """phi_b(x) in B coordinates, where phi_b: summand -> B is the Yoneda map
    with generator value the b-th basis vector, and x = sum coeff * basis."""
    per = emb.embed(b_index)
    total = {}
    p = summand.p
    for si, v_items in per.items():
        dst = emb.summands[si]
        val = yoneda_value_at(summand, dst, v_items, x_items, sym_target=True)
        off = emb.offsets[si]
        for r, c in val.items():
            total[int(r + off)] = (total.get(int(r + off), 0) + c) % p
    out = emb.project(total)
    return {i: int(out[i]) for i in np.nonzero(out)[0]}


def kunneth_ext(table1, table2, max_degree=None):
    """Convolution of two ExtTables over (degree, aux)."""
    entries = {}
    for (i1, g1), v1 in table1.entries.items():
        for (i2, g2), v2 in table2.entries.items():
            key = (i1 + i2, g1 + g2)
            if max_degree is not None and key[0] > max_degree:
                continue
            entries[key] = entries.get(key, 0) + v1 * v2
    return ExtTable(entries, max_degree=max_degree)


# ---------------------------------------------------------------------------
# hom spaces by direct intertwiner solve


class HomSpace:
    def __init__(self, source, target, basis, aux_shifts, warning=None):
        self.source = source
        self.target = target
        self.basis = basis
        self.aux_shifts = aux_shifts
        self.warning = warning

    @property
    def dim(self):
        return len(self.basis)

    def dims_by_aux(self):
        out = {}
        for s in self.aux_shifts:
            out[s] = out.get(s, 0) + 1
        return out


def hom_space(A, B, max_unknowns=2_000_000):
    """All equivariant matrices B.dim x A.dim, by solving the intertwiner
    equations X gA = gB X on the weight-matched entries.  The basis is
    refined so each element is homogeneous for the aux shift
    (source aux - target aux); the generator equations are themselves
    shift-homogeneous, so this loses nothing."""
    if A.p != B.p or A.ms != B.ms:
        raise ValueError("hom_space needs matching p and evaluation dims")
    p = A.p
    warning = None
    for i, m in enumerate(A.ms):
        dA = A.degrees[i]
        if dA is not None and m < dA:
            warning = (
                "evaluation dim %d below degree %d: Hom may not be faithful"
                % (m, dA)
            )
    # unknowns: entries X[t, c] with weight(t) == weight(c)
    A_by_weight = {}
    for c, w in enumerate(A.weights):
        A_by_weight.setdefault(w, []).append(c)
    B_by_weight = {}
    for t, w in enumerate(B.weights):
        B_by_weight.setdefault(w, []).append(t)
    unknowns = []
    for w, acols in A_by_weight.items():
        for c in acols:
            for t in B_by_weight.get(w, []):
                unknowns.append((t, c))
    total = len(unknowns)
    if total > max_unknowns:
        raise ResourceGuard(
            "hom solve needs %d unknowns (bound %d)" % (total, max_unknowns),
            total,
            max_unknowns,
        )
    if total == 0:
        return HomSpace(A, B, [], [], warning)
    upos = {tc: i for i, tc in enumerate(unknowns)}

    keys = sorted(set(A.gens) | set(B.gens))
    eq_rows = []
    for key in keys:
        gA = A.gens.get(key)
        gB = B.gens.get(key)
        gAd = fplin.to_dense(gA, p) if gA is not None else None
        gBd = fplin.to_dense(gB, p) if gB is not None else None
        for c in range(A.dim):
            w2 = _shift_weight(A.weights[c], key)
            if w2 is None:
                continue
            for t in B_by_weight.get(w2, []):
                row = {}
                if gAd is not None:
                    for j in A_by_weight.get(w2, []):
                        v = int(gAd[j, c])
                        if v:
                            u = upos.get((t, j))
                            if u is not None:
                                row[u] = (row.get(u, 0) + v) % p
                if gBd is not None:
                    for r in B_by_weight.get(A.weights[c], []):
                        v = int(gBd[t, r])
                        if v:
                            u = upos.get((r, c))
                            if u is not None:
                                row[u] = (row.get(u, 0) - v) % p
                if row:
                    eq_rows.append(row)
    if eq_rows:
        data, ri, ci = [], [], []
        for r, row in enumerate(eq_rows):
            for u, v in row.items():
                if v % p:
                    ri.append(r)
                    ci.append(u)
                    data.append(v % p)
        Eq = sp.coo_matrix(
            (data, (ri, ci)), shape=(len(eq_rows), total), dtype=np.int64
        ).toarray()
        K = fplin.kernel_basis(Eq, p)
    else:
        K = fplin.eye(total)
    # refine by aux shift and materialize matrices
    shift_of = np.array(
        [int(A.aux[c]) - int(B.aux[t]) for (t, c) in unknowns], dtype=np.int64
    )
    basis = []
    shifts = []
    for s in sorted(set(shift_of.tolist())):
        mask = shift_of == s
        proj = K.copy()
        proj[~mask, :] = 0
        eb = fplin.EchelonBasis(total, p)
        eb.insert(proj.T)
        for rvec in eb.rows:
            X = np.zeros((B.dim, A.dim), dtype=np.int64)
            for i, (t, c) in enumerate(unknowns):
                if rvec[i]:
                    X[t, c] = int(rvec[i])
            basis.append(X)
            shifts.append(s)
    return HomSpace(A, B, basis, shifts, warning)


# ---------------------------------------------------------------------------
# twist adjoint on resolutions
#
# The adjoint divides every divided-power degree by q = p^r: a summand
# survives when q divides all its factor degrees, and the canonical
# projection pi sends a realized basis vector q_(M) to q_(M/q) when q
# divides every letter multiplicity, to 0 otherwise.  Applying pi to the
# generator values of the differentials gives the image complex; its
# homology is returned as honest modules (with generator actions) on chosen
# representatives.


def _ell_summand(s, q):
    """The summand with all factor degrees divided by q, or None."""
    if q == 1:
        return Summand(s.p, s.ms, s.parts, aux_offset=s.aux_offset)
    parts = []
    for fac in s.parts:
        row = []
        for slot, c in fac:
            if c % q:
                return None
            row.append((slot, c // q))
        parts.append(tuple(row))
    return Summand(s.p, s.ms, parts, aux_offset=s.aux_offset)


def _ell_layer(layer, q):
    """Image layer and the list of surviving copy indices."""
    kept, sums = [], []
    for i, s in enumerate(layer.summands):
        es = _ell_summand(s, q)
        if es is not None:
            kept.append(i)
            sums.append(es)
    return ProjectiveLayer(layer.p, layer.ms, sums), kept


def _ell_multiset(M, q):
    """M with every letter multiplicity divided by q, or None."""
    out = []
    for z in sorted(set(M)):
        c = M.count(z)
        if c % q:
            return None
        out.extend([z] * (c // q))
    return tuple(out)


def _ell_items(layer, ell_layer, kept, v, q):
    """pi applied to a layer vector, as per-surviving-copy item lists."""
    pos_of = {ci: j for j, ci in enumerate(kept)}
    per = {}
    for g in np.nonzero(v)[0]:
        ci, local = layer.copy_of(g)
        j = pos_of.get(ci)
        if j is None:
            continue
        es = ell_layer.summands[j]
        tgt = 0
        for f, M in enumerate(layer.summands[ci].decode(local)):
            Mq = _ell_multiset(M, q)
            if Mq is None:
                tgt = None
                break
            m = es.ms[es.factor_vars[f]]
            tgt += _multiset_index(m, es.factor_degs[f])[Mq] * es.strides[f]
        if tgt is not None:
            per.setdefault(j, []).append((tgt, int(v[g])))
    return per


def _ell_complex(resolution, r):
    """Layers and differentials of the image complex; d o d = 0 is checked."""
    p = resolution.module.p
    q = p**r
    pairs = [_ell_layer(L, q) for L in resolution.layers]
    layers = [L for L, kept in pairs]
    diffs = []
    for i, d in enumerate(resolution.diffs):
        src, src_kept = pairs[i + 1]
        dst, dst_kept = pairs[i]
        gen_idx = resolution.layers[i + 1].generator_indices()
        rows, cols, data = [], [], []
        for jnew, ci in enumerate(src_kept):
            v = np.asarray(d[:, gen_idx[ci]].todense()).ravel() % p
            per = _ell_items(resolution.layers[i], dst, dst_kept, v, q)
            for jdst, items in per.items():
                block = yoneda_block(
                    src.summands[jnew], dst.summands[jdst], items
                ).tocoo()
                rows.extend((block.row + dst.offsets[jdst]).tolist())
                cols.extend((block.col + src.offsets[jnew]).tolist())
                data.extend(block.data.tolist())
        mat = sp.coo_matrix(
            (data, (rows, cols)), shape=(dst.dim, src.dim), dtype=np.int64
        ).tocsr()
        mat.data %= p
        mat.eliminate_zeros()
        diffs.append(mat)
    for i in range(len(diffs) - 1):
        prod = diffs[i] @ diffs[i + 1]
        prod.data %= p
        prod.eliminate_zeros()
        assert prod.nnz == 0, "image complex fails d o d = 0"
    return layers, diffs


def _homology_module(layer, d_out, d_in, degrees):
    """ker(d_out)/im(d_in) inside a layer, as a PolyRep on representatives.

    Per (weight, aux) block the image is echelonized, kernel vectors that
    extend it are kept as representatives, and the generator actions are
    re-expressed in the representatives; residues must lie in the image.
    """
    p = layer.p
    blocks = layer.weight_blocks()
    order = sorted(
        blocks.items(),
        key=lambda kv: (tuple(tuple(-x for x in r) for r in kv[0][0]), kv[0][1]),
    )
    d_out_c = sp.csc_matrix(d_out) if d_out is not None else None
    d_in_c = sp.csr_matrix(d_in) if d_in is not None else None
    info = {}
    weights, aux, reps_full = [], [], []
    for (w, a), ix in order:
        nloc = len(ix)
        if d_out_c is not None:
            sub = d_out_c[:, ix]
            rix = np.unique(sub.nonzero()[0])
            K = (
                fplin.kernel_basis(sub[rix, :].toarray() % p, p)
                if len(rix)
                else fplin.eye(nloc)
            )
        else:
            K = fplin.eye(nloc)
        eb_img = fplin.EchelonBasis(nloc, p)
        if d_in_c is not None:
            img = d_in_c[ix, :]
            cix = np.unique(img.nonzero()[1])
            if len(cix):
                eb_img.insert(img[:, cix].toarray().T % p)
        eb_aug = fplin.EchelonBasis(nloc, p)
        if eb_img.dim:
            eb_aug.insert(eb_img.rows)
        reps = []
        for jcol in range(K.shape[1]):
            vloc = K[:, jcol] % p
            if eb_aug.insert(vloc)[0] is not None:
                reps.append(vloc)
        Rm = (
            eb_img.reduce(np.stack(reps)) if reps else np.zeros((0, nloc), dtype=np.int64)
        )
        info[(w, a)] = (ix, eb_img, Rm, len(weights))
        for vloc in reps:
            full = np.zeros(layer.dim, dtype=np.int64)
            full[ix] = vloc
            reps_full.append(full)
            weights.append(w)
            aux.append(a)
    dim = len(reps_full)
    R = (
        np.stack(reps_full, axis=1)
        if dim
        else np.zeros((layer.dim, 0), dtype=np.int64)
    )
    gens = {}
    if dim:
        for key in layer.gen_keys():
            out = layer.apply_gen(key, R)
            col_entries = {}
            for t in range(dim):
                u_full = out[:, t]
                if not u_full.any():
                    continue
                w2 = layer.shifted_weight(weights[t], key)
                tgt = info.get((w2, aux[t])) if w2 is not None else None
                assert tgt is not None, "action leaves the graded support"
                ix2, eb_img2, Rm2, off2 = tgt
                u = eb_img2.reduce(u_full[ix2])[0]
                if not u.any():
                    continue
                coeffs = fplin.solve(
                    np.ascontiguousarray(Rm2.T), u, p
                ) if Rm2.shape[0] else None
                assert coeffs is not None, (
                    "homology is not closed under the action"
                )
                for s, c in enumerate(coeffs):
                    if c:
                        col_entries.setdefault(t, []).append((off2 + s, int(c)))
            if col_entries:
                ri, ci, data = [], [], []
                for t, items in col_entries.items():
                    for rr, c in items:
                        ri.append(rr)
                        ci.append(t)
                        data.append(c)
                gens[key] = sp.coo_matrix(
                    (data, (ri, ci)), shape=(dim, dim), dtype=np.int64
                ).tocsr()
    return polyrep.PolyRep(
        p,
        layer.ms,
        degrees,
        weights,
        np.array(aux, dtype=np.int64),
        gens,
    )


def derived_ell_r(F, r, length, max_layer_dim=DEFAULT_MAX_LAYER_DIM, cache=None,
                  resolution=None):
    """Homology modules H_0 .. H_length of the image complex of a projective
    resolution of F under the twist adjoint.  One extra layer is resolved so
    the top homology is exact."""
    if resolution is None or len(resolution.layers) < length + 2:
        resolution = resolve(
            F, length + 1, max_layer_dim=max_layer_dim, cache=cache
        )
    q = F.p**r
    layers, diffs = _ell_complex(resolution, r)
    degrees = tuple(
        None if (g is None or g % q) else g // q for g in F.degrees
    )
    out = []
    for i in range(length + 1):
        d_out = diffs[i - 1] if i >= 1 else None
        d_in = diffs[i] if i < len(diffs) else None
        out.append(_homology_module(layers[i], d_out, d_in, degrees))
    return out


def ell_r(F, r, max_layer_dim=DEFAULT_MAX_LAYER_DIM, cache=None):
    """The underived twist adjoint: H_0 of the image complex."""
    return derived_ell_r(F, r, 0, max_layer_dim=max_layer_dim, cache=cache)[0]


# ---------------------------------------------------------------------------
# cup products
#
# Products are taken over divided powers of a common base rep X: classes in
# Ext(Gamma^a of X, B1) and Ext(Gamma^b of X, B2) multiply into
# Ext(Gamma^(a+b) of X, B1 (x) B2) by lifting the divided-power
# comultiplication to a chain map from the target resolution into the tensor
# of the two factor resolutions and pulling the product cocycle back.  For a
# pair of degree-0 classes no lift is needed: both factor through the
# augmentations, so the product is plain matrix composition.


class TensorStage:
    """Degree-n stage of the tensor of two resolutions, as a module.

    The direct sum over s + t = n of P_s (x) Q_t with the kron index
    (iP, iQ) -> iP * dim(Q_t) + iQ inside each part; exposes the module
    interface needed by cover_matrix (p, ms, dim, apply_gen,
    weight_blocks)."""

    def __init__(self, R1, R2, n):
        self.p = R1.module.p
        self.ms = R1.module.ms
        self.n = n
        self.parts = []
        off = 0
        for s in range(n + 1):
            t = n - s
            if s < len(R1.layers) and t < len(R2.layers):
                P, Q = R1.layers[s], R2.layers[t]
                if P.dim and Q.dim:
                    self.parts.append((s, t, P, Q, off))
                    off += P.dim * Q.dim
        self.dim = off
        self._blocks = None

    def apply_gen(self, key, V):
        V = np.asarray(V, dtype=np.int64)
        single = V.ndim == 1
        if single:
            V = V[:, None]
        var, a, k, sign = key
        out = np.zeros_like(V)
        for (s, t, P, Q, off) in self.parts:
            seg = V[off : off + P.dim * Q.dim]
            if not seg.any():
                continue
            batch = seg.shape[1]
            cube = seg.reshape(P.dim, Q.dim, batch)
            acc = np.zeros_like(cube)
            for k1 in range(k + 1):
                k2 = k - k1
                term = cube
                if k1:
                    term = P.apply_gen(
                        (var, a, k1, sign), term.reshape(P.dim, Q.dim * batch)
                    ).reshape(P.dim, Q.dim, batch)
                if k2:
                    sw = term.transpose(1, 0, 2).reshape(Q.dim, P.dim * batch)
                    sw = Q.apply_gen((var, a, k2, sign), sw)
                    term = sw.reshape(Q.dim, P.dim, batch).transpose(1, 0, 2)
                acc = (acc + term) % self.p
            out[off : off + P.dim * Q.dim] = acc.reshape(P.dim * Q.dim, batch)
        return out[:, 0] if single else out

    def weight_blocks(self):
        if self._blocks is None:
            blocks = {}
            for (s, t, P, Q, off) in self.parts:
                for (w1, a1), ix1 in P.weight_blocks().items():
                    for (w2, a2), ix2 in Q.weight_blocks().items():
                        w = tuple(
                            tuple(x + y for x, y in zip(r1, r2))
                            for r1, r2 in zip(w1, w2)
                        )
                        key = (w, a1 + a2)
                        ix = (ix1[:, None] * Q.dim + ix2[None, :]).ravel() + off
                        if key in blocks:
                            blocks[key] = np.concatenate([blocks[key], ix])
                        else:
                            blocks[key] = ix
            self._blocks = blocks
        return self._blocks


def _tensor_diff(R1, R2, stage_n, stage_prev):
    """Total differential stage_n -> stage_prev: d (x) 1 + (-1)^s 1 (x) d."""
    p = stage_n.p
    prev_off = {(s, t): off for (s, t, P, Q, off) in stage_prev.parts}
    rows, cols, data = [], [], []
    for (s, t, P, Q, off) in stage_n.parts:
        if s >= 1 and (s - 1, t) in prev_off:
            blk = sp.kron(
                R1.diffs[s - 1], sp.eye(Q.dim, dtype=np.int64), format="coo"
            )
            rows.extend((blk.row + prev_off[(s - 1, t)]).tolist())
            cols.extend((blk.col + off).tolist())
            data.extend(blk.data.tolist())
        if t >= 1 and (s, t - 1) in prev_off:
            sgn = 1 if s % 2 == 0 else p - 1
            blk = sp.kron(
                sp.eye(P.dim, dtype=np.int64), R2.diffs[t - 1], format="coo"
            )
            rows.extend((blk.row + prev_off[(s, t - 1)]).tolist())
            cols.extend((blk.col + off).tolist())
            data.extend((blk.data * sgn).tolist())
    mat = sp.coo_matrix(
        (data, (rows, cols)), shape=(stage_prev.dim, stage_n.dim), dtype=np.int64
    ).tocsr()
    mat.data %= p
    mat.eliminate_zeros()
    return mat


def hom_product(X, a, b, psi1, psi2):
    """Product of two hom-space elements over divided powers of X.

    psi1: matrix of a map Gamma^a of X -> B1, psi2: of Gamma^b of X -> B2
    (as produced by ExtComputation.hom_matrix or hom_space).  Returns the
    matrix of the composite Gamma^(a+b) of X -> B1 (x) B2 through the
    divided-power comultiplication."""
    p = X.p
    psi1 = np.asarray(psi1, dtype=np.int64)
    psi2 = np.asarray(psi2, dtype=np.int64)
    delta = sp.csc_matrix(polyrep.comultiplication_map(X, a + b, (a, b)))
    n1 = delta.shape[0] // psi2.shape[1]
    out = np.zeros((psi1.shape[0] * psi2.shape[0], delta.shape[1]),
                   dtype=np.int64)
    for c in range(delta.shape[1]):
        col = delta[:, c].tocoo()
        for r, coeff in zip(col.row, col.data):
            i1, i2 = divmod(int(r), psi2.shape[1])
            assert i1 < n1
            out[:, c] += coeff * np.kron(psi1[:, i1], psi2[:, i2])
    return out % p


class CupProduct:
    """Chain-level products of Ext classes over divided powers of a base rep.

    E1, E2, E12 are ExtComputations for (Gamma^a of X, B1), (Gamma^b of X,
    B2) and (Gamma^(a+b) of X, tensor(B1, B2)), where the divided powers are
    built by polyrep.divided_power on the same X (so the comultiplication
    matrix lines up with the module bases).  The chain map from E12's
    resolution into the tensor of the factor resolutions is built level by
    level through blockwise solves; a seeded rng perturbs every solve by a
    kernel element, which must not move any product class (this is the
    lift-independence property).
    """

    def __init__(self, X, a, b, E1, E2, E12, rng=None, max_block=20000):
        self.E1, self.E2, self.E12 = E1, E2, E12
        self.p = E12.p
        self.delta = polyrep.comultiplication_map(X, a + b, (a, b))
        if self.delta.shape != (E1.A.dim * E2.A.dim, E12.A.dim):
            raise ValueError("E1/E2/E12 do not match the comultiplication")
        self.rng = rng
        self.max_block = max_block
        self.stages = []
        self.tdiffs = []  # tdiffs[n]: stage n -> stage n-1 (index 0 unused)
        self.values = []  # per level, per E12 copy: lifted generator value
        self.lifts = []  # per level: full chain-map matrix, built on demand
        self._ab_blocks = {}

    def _tensor_module_block(self, key):
        """Row indices of one (weight, aux) block of A1 (x) A2."""
        if key not in self._ab_blocks:
            w, a = key
            ix = []
            d2 = self.E2.A.dim
            b2 = _module_blocks(self.E2.A)
            for (w1, a1), ix1 in _module_blocks(self.E1.A).items():
                w2 = tuple(
                    tuple(x - y for x, y in zip(r, r1)) for r, r1 in zip(w, w1)
                )
                if any(x < 0 for row in w2 for x in row):
                    continue
                ix2 = b2.get((w2, a - a1))
                if ix2 is not None:
                    ix.append((ix1[:, None] * d2 + ix2[None, :]).ravel())
            self._ab_blocks[key] = (
                np.concatenate(ix) if ix else np.zeros(0, dtype=np.int64)
            )
        return self._ab_blocks[key]

    def _solve_block(self, mat, rows, cols, target):
        """Solve mat u = target on one block, optionally perturbed by a
        random kernel element."""
        p = self.p
        nz = np.nonzero(target)[0]
        if len(nz):
            mask = np.zeros(len(target), dtype=bool)
            mask[rows] = True
            assert mask[nz].all(), "lift target leaves its graded block"
        if len(rows) > self.max_block or len(cols) > self.max_block:
            raise ResourceGuard(
                "cup lift block of size %dx%d exceeds the bound %d"
                % (len(rows), len(cols), self.max_block),
                max(len(rows), len(cols)),
                self.max_block,
            )
        sub = sp.csc_matrix(mat)[:, cols][rows, :].toarray() % p
        sol = fplin.solve(sub, target[rows] % p, p)
        if sol is None:
            raise CoverError(
                "cup lift failed: the tensor complex is not exact here"
            )
        if self.rng is not None:
            K = fplin.kernel_basis(sub, p)
            if K.shape[1]:
                sol = (sol + K @ self.rng.integers(0, p, K.shape[1])) % p
        return sol

    def _ensure(self, n):
        p = self.p
        R1, R2, R12 = (
            self.E1.resolution,
            self.E2.resolution,
            self.E12.resolution,
        )
        while len(self.stages) <= n:
            lvl = len(self.stages)
            stage = TensorStage(R1, R2, lvl)
            layer = R12.layers[lvl]
            gen_idx = layer.generator_indices()
            if lvl == 0:
                self.tdiffs.append(None)
                aug_t = sp.kron(R1.aug, R2.aug, format="csr")
                aug_t.data %= p
                vals = []
                for ci, s in enumerate(layer.summands):
                    target = self.delta @ np.asarray(
                        R12.aug[:, gen_idx[ci]].todense()
                    ).ravel()
                    target = np.asarray(target).ravel() % p
                    rows = self._tensor_module_block((s.weight, s.aux_offset))
                    cols = stage.weight_blocks().get((s.weight, s.aux_offset))
                    assert cols is not None and len(cols), (
                        "tensor stage misses the generator block"
                    )
                    sol = self._solve_block(aug_t, rows, cols, target)
                    u = np.zeros(stage.dim, dtype=np.int64)
                    u[cols] = sol
                    vals.append(u)
            else:
                dT = _tensor_diff(R1, R2, stage, self.stages[lvl - 1])
                self.tdiffs.append(dT)
                if lvl >= 2 and self.tdiffs[lvl - 1] is not None:
                    prod = self.tdiffs[lvl - 1] @ dT
                    prod.data %= p
                    prod.eliminate_zeros()
                    assert prod.nnz == 0, "tensor complex fails d o d = 0"
                lift_prev = self._lift_matrix(lvl - 1)
                d12 = R12.diffs[lvl - 1]
                vals = []
                for ci, s in enumerate(layer.summands):
                    v = np.asarray(d12[:, gen_idx[ci]].todense()).ravel() % p
                    target = np.asarray(lift_prev @ v).ravel() % p
                    rows = self.stages[lvl - 1].weight_blocks().get(
                        (s.weight, s.aux_offset), np.zeros(0, dtype=np.int64)
                    )
                    cols = stage.weight_blocks().get((s.weight, s.aux_offset))
                    assert cols is not None and len(cols), (
                        "tensor stage misses the generator block"
                    )
                    sol = self._solve_block(dT, rows, cols, target)
                    u = np.zeros(stage.dim, dtype=np.int64)
                    u[cols] = sol
                    vals.append(u)
            self.stages.append(stage)
            self.values.append(vals)
            self.lifts.append(None)

    def _lift_matrix(self, n):
        """Full matrix of the chain map at level n (cover per copy)."""
        self._ensure(n)
        if self.lifts[n] is None:
            layer = self.E12.resolution.layers[n]
            stage = self.stages[n]
            rows, cols, data = [], [], []
            for ci, s in enumerate(layer.summands):
                cm = cover_matrix(s, stage, self.values[n][ci]).tocoo()
                rows.extend(cm.row.tolist())
                cols.extend((cm.col + layer.offsets[ci]).tolist())
                data.extend(cm.data.tolist())
            mat = sp.coo_matrix(
                (data, (rows, cols)), shape=(stage.dim, layer.dim),
                dtype=np.int64,
            ).tocsr()
            if n >= 1:
                # chain-map property, checked on the full matrices
                lhs = self.tdiffs[n] @ mat
                rhs = self._lift_matrix(n - 1) @ self.E12.resolution.diffs[n - 1]
                chk = lhs - rhs
                chk.data %= self.p
                chk.eliminate_zeros()
                assert chk.nnz == 0, "chain-map property fails"
            self.lifts[n] = mat
        return self.lifts[n]

    def _evaluator(self, E, i, vec):
        """Cochain evaluation at single layer-i basis vectors, cached."""
        layer = E.resolution.layers[i]
        by_copy = E.positions_by_copy(i)
        vec = np.asarray(vec, dtype=np.int64) % self.p
        cache = {}

        def ev(gidx):
            if gidx not in cache:
                cp, local = layer.copy_of(gidx)
                out = {}
                for pos, b in by_copy.get(cp, []):
                    if vec[pos]:
                        val = _phi_value(
                            E.emb, layer.summands[cp], b, [(local, 1)]
                        )
                        for r, c in val.items():
                            out[r] = (out.get(r, 0) + vec[pos] * c) % self.p
                cache[gidx] = {r: c for r, c in out.items() if c}
            return cache[gidx]

        return ev

    def product(self, i, x_vec, j, y_vec):
        """The product cocycle, as a vector over E12.bases[i + j]."""
        p = self.p
        n = i + j
        d2 = self.E2.B.dim
        pos12 = self.E12.position_index(n)
        psi = np.zeros(len(self.E12.bases[n]), dtype=np.int64)
        if n == 0:
            # both classes factor through the augmentations
            m1 = self.E1.hom_matrix(x_vec)
            m2 = self.E2.hom_matrix(y_vec)
            R12 = self.E12.resolution
            layer = R12.layers[0]
            gen_idx = layer.generator_indices()
            dc = sp.csc_matrix(self.delta)
            for ci in range(len(layer.summands)):
                avec = np.asarray(R12.aug[:, gen_idx[ci]].todense()).ravel() % p
                dvec = dc @ avec
                dvec = np.asarray(dvec).ravel() % p
                val = np.zeros(self.E1.B.dim * d2, dtype=np.int64)
                for r in np.nonzero(dvec)[0]:
                    i1, i2 = divmod(int(r), self.E2.A.dim)
                    val += dvec[r] * np.kron(m1[:, i1], m2[:, i2])
                val %= p
                for b12 in np.nonzero(val)[0]:
                    pos = pos12.get((ci, int(b12)))
                    assert pos is not None, "product value leaves the basis"
                    psi[pos] = (psi[pos] + val[b12]) % p
        else:
            self._ensure(n)
            ev_x = self._evaluator(self.E1, i, x_vec)
            ev_y = self._evaluator(self.E2, j, y_vec)
            stage = self.stages[n]
            part = next(
                ((s, t, P, Q, off) for (s, t, P, Q, off) in stage.parts
                 if (s, t) == (i, j)),
                None,
            )
            if part is not None:
                s_, t_, P, Q, off = part
                for ci, u in enumerate(self.values[n]):
                    seg = u[off : off + P.dim * Q.dim]
                    for idx in np.nonzero(seg)[0]:
                        iP, iQ = divmod(int(idx), Q.dim)
                        xv = ev_x(iP)
                        if not xv:
                            continue
                        yv = ev_y(iQ)
                        if not yv:
                            continue
                        for b1, c1 in xv.items():
                            for b2, c2 in yv.items():
                                pos = pos12.get((ci, b1 * d2 + b2))
                                assert pos is not None, (
                                    "product value leaves the basis"
                                )
                                psi[pos] = (
                                    psi[pos] + seg[idx] * c1 * c2
                                ) % p
        assert self.E12.is_cocycle(n, psi), "product is not a cocycle"
        return psi
