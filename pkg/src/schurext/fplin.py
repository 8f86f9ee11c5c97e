"""Exact linear algebra over the prime fields F_p.

Conventions used across the package:

* scalars are plain python ints in the range 0..p-1; the modulus p travels
  alongside as an explicit argument and is validated at public entry points,
* dense matrices are numpy int64 arrays with entries reduced mod p,
* sparse matrices are scipy CSR with int64 data (used whenever density is
  below SPARSE_DENSITY, e.g. generator actions and resolution differentials).

No floating point is used anywhere: all products of residues fit comfortably
in int64 for the tested moduli (p <= 7) and desk-scale dimensions.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

SPARSE_DENSITY = 0.05


def check_prime(p):
    if not isinstance(p, (int, np.integer)) or p < 2:
        raise ValueError("modulus must be an integer >= 2, got %r" % (p,))
    n = int(p)
    d = 2
    while d * d <= n:
        if n % d == 0:
            raise ValueError("modulus %d is not prime" % n)
        d += 1
    return n


def pinv(a, p):
    """Inverse of a nonzero residue mod p."""
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 is not invertible mod %d" % p)
    return pow(a, p - 2, p)


def is_sparse(M):
    return sp.issparse(M)


def to_dense(M, p=None):
    A = np.asarray(M.todense() if sp.issparse(M) else M, dtype=np.int64)
    if p is not None:
        A = A % p
    return A


def to_sparse(M, p=None):
    A = M if sp.issparse(M) else sp.csr_matrix(np.asarray(M, dtype=np.int64))
    A = A.astype(np.int64)
    if p is not None:
        A.data %= p
        A.eliminate_zeros()
    return A


def density(M):
    r, c = M.shape
    if r * c == 0:
        return 0.0
    nnz = M.nnz if sp.issparse(M) else int(np.count_nonzero(M))
    return nnz / (r * c)


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n):
    return np.eye(n, dtype=np.int64)


def rref(M, p):
    """Reduced row echelon form.  Returns (R, pivot_columns).

    Pivoting is deterministic: first nonzero entry scanning columns left to
    right, rows top to bottom.  That keeps every downstream basis (kernels,
    spin closures, cached resolutions) byte-stable.
    """
    check_prime(p)
    R = to_dense(M, p).copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pinv(R[r, c], p)) % p
        other = np.nonzero(R[:, c])[0]
        other = other[other != r]
        if len(other):
            R[other] = (R[other] - np.outer(R[other, c], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, p):
    return len(rref(M, p)[1])


def kernel_basis(M, p):
    """Basis of the right kernel {x : Mx = 0}, as columns of an n x k matrix.

    Basis vectors are in the standard rref parameterization: free column j
    contributes the vector with 1 at j and -R[i, j] at each pivot column.
    """
    R, pivots = rref(M, p)
    rows, cols = R.shape
    free = [c for c in range(cols) if c not in pivots]
    K = zeros(cols, len(free))
    for idx, c in enumerate(free):
        K[c, idx] = 1
        for i, pc in enumerate(pivots):
            K[pc, idx] = (-R[i, c]) % p
    return K


def solve(M, b, p):
    """One solution of Mx = b, or None when b is outside the column space.

    b may be a vector or a matrix of stacked right-hand sides (columns);
    in the matrix case the result is the matrix of solutions or None if any
    column is unsolvable.
    """
    A = to_dense(M, p)
    B = to_dense(b, p)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    if A.shape[0] != B.shape[0]:
        raise ValueError("shape mismatch in solve: %s vs %s" % (A.shape, B.shape))
    R, pivots = rref(np.hstack([A, B]), p)
    n = A.shape[1]
    if any(c >= n for c in pivots):
        return None
    X = zeros(n, B.shape[1])
    for i, c in enumerate(pivots):
        X[c] = R[i, n:]
    return X[:, 0] if vec else X


def inverse(M, p):
    """Inverse of a square matrix mod p, or None if singular."""
    A = to_dense(M, p)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    if rank(A, p) != n:
        return None
    return solve(A, eye(n), p)


def kron(A, B, p):
    """Kronecker product with (A o B)[i*rB+k, j*cB+l] = A[i,j]*B[k,l] mod p."""
    check_prime(p)
    if sp.issparse(A) or sp.issparse(B):
        K = sp.kron(to_sparse(A), to_sparse(B), format="csr").astype(np.int64)
        K.data %= p
        K.eliminate_zeros()
        return K
    return (np.kron(to_dense(A), to_dense(B)) % p).astype(np.int64)


def matmul(A, B, p):
    C = A @ B
    if sp.issparse(C):
        C = C.astype(np.int64)
        C.data %= p
        C.eliminate_zeros()
        return C
    return np.asarray(C, dtype=np.int64) % p


class EchelonBasis:
    """An incrementally built row space in reduced echelon form over F_p.

    This is the workhorse behind spinning (submodule closure), minimal
    generator selection and Yoneda cover maps.  Rows are inserted in batches;
    each insertion reduces against the current basis, echelonizes the
    remainder and appends the new pivot rows.

    With record=True every stored row remembers how it was produced
    (`ops`): either ("seed", tag) for an externally inserted row or
    ("row", source_row, coeffs, leadinv) meaning
    row = (source_vector - coeffs . rows) * leadinv where source_vector is
    described by the caller's tag.  Replaying the ops on a second vector
    family transports the reduction to a parallel space (used for cover maps
    valued in a target module).
    """

    def __init__(self, ncols, p, record=False):
        self.p = check_prime(p)
        self.ncols = ncols
        self.rows = zeros(0, ncols)
        self.pivots = []
        self.ops = [] if record else None

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, V):
        """Reduce a batch of row vectors against the basis (returns residues)."""
        V = np.asarray(V, dtype=np.int64) % self.p
        if V.ndim == 1:
            V = V[None, :]
        if self.dim:
            C = V[:, self.pivots]
            V = (V - C @ self.rows) % self.p
        return V

    def contains(self, v):
        return not self.reduce(v).any()

    def insert(self, V, tags=None):
        """Insert a batch of rows; returns indices of inserted rows per input
        (None when the input was already in the span).

        tags label the inputs for op recording (defaults to ("seed", i)).
        """
        V = np.asarray(V, dtype=np.int64) % self.p
        if V.ndim == 1:
            V = V[None, :]
        out = []
        for i in range(V.shape[0]):
            v = V[i].copy()
            coeffs = []
            if self.dim:
                c = v[self.pivots]
                nz = np.nonzero(c)[0]
                if len(nz):
                    v = (v - c @ self.rows) % self.p
                    coeffs = [(int(j), int(c[j])) for j in nz]
            nzv = np.nonzero(v)[0]
            if len(nzv) == 0:
                out.append(None)
                continue
            lead = int(nzv[0])
            li = pinv(v[lead], self.p)
            v = (v * li) % self.p
            # keep earlier rows reduced against the new pivot
            if self.dim:
                col = self.rows[:, lead].copy()
                nz = np.nonzero(col)[0]
                if len(nz):
                    self.rows[nz] = (self.rows[nz] - np.outer(col[nz], v)) % self.p
            self.rows = np.vstack([self.rows, v[None, :]])
            self.pivots.append(lead)
            if self.ops is not None:
                tag = tags[i] if tags is not None else ("seed", i)
                self.ops.append((tag, coeffs, li))
            out.append(self.dim - 1)
        return out

    def coordinates(self, v):
        """Coefficients c with c . rows = v, or None if v is outside the span."""
        v = np.asarray(v, dtype=np.int64) % self.p
        c = v[self.pivots] if self.dim else zeros(0, 1)[:, 0]
        if ((v - c @ self.rows) % self.p).any():
            return None
        return c
