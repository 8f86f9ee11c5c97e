"""Weights (compositions), multisets and the counting oracles.

The oracles here are deliberately independent of the module constructors in
polyrep: they count monomials/matrices directly and serve as the ground truth
that every constructed weight space is checked against (the Yoneda
cross-check).

Two orderings are used deliberately:

* compositions(d, m) enumerates ascending lexicographic (the contract order),
* canonical_weights sorts descending lexicographic (the canonical weight-block
  order used for bases, serialization and caching).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial

import numpy as np

Weight = tuple  # tuple of ints, one entry per column of the evaluation space
MultiWeight = tuple  # tuple of Weight, one per functor variable


def compositions(d, m):
    """All length-m tuples of naturals summing to d, ascending lex order."""
    if m < 1:
        raise ValueError("need at least one part")
    out = []

    def rec(prefix, rest, parts_left):
        if parts_left == 1:
            out.append(prefix + (rest,))
            return
        for first in range(rest + 1):
            rec(prefix + (first,), rest - first, parts_left - 1)

    rec((), d, m)
    return out


def n_compositions(d, m):
    return comb(d + m - 1, m - 1)


def canonical_weights(weights):
    """Canonical (descending lex) order on weights or multiweights."""
    return sorted(set(weights), reverse=True)


def multinomial(d, parts):
    if sum(parts) != d:
        return 0
    n = factorial(d)
    for c in parts:
        n //= factorial(c)
    return n


def _matrix_count(rows, cols, cap):
    """Number of nonnegative integer matrices with the given row and column
    sums; entries capped at `cap` (None for no cap, 1 for 0/1 matrices)."""
    rows = tuple(r for r in rows)
    cols = tuple(c for c in cols)
    if sum(rows) != sum(cols):
        return 0

    @lru_cache(maxsize=None)
    def rec(row_idx, remaining_cols):
        if row_idx == len(rows):
            return 1 if all(c == 0 for c in remaining_cols) else 0
        total = 0
        r = rows[row_idx]
        # distribute r over the columns without exceeding remaining sums
        def distribute(j, left, acc):
            nonlocal total
            if j == len(remaining_cols):
                if left == 0:
                    total += rec(row_idx + 1, acc)
                return
            hi = min(left, remaining_cols[j])
            if cap is not None:
                hi = min(hi, cap)
            for take in range(hi + 1):
                distribute(j + 1, left - take, acc + (remaining_cols[j] - take,))

        distribute(0, r, ())
        return total

    return rec(0, cols)


def weight_space_dim_oracle(kind, mu, lam):
    """Dimension of the lam-weight space of Gamma^mu / S^mu / Lambda^mu /
    tensor^d, by direct counting.

    kind: one of "gamma", "sym", "wedge", "tensor".  For "tensor", mu is the
    degree d (an int) and the count is the multinomial d!/prod(lam_i!).
    """
    lam = tuple(lam)
    if kind == "tensor":
        d = int(mu)
        if sum(lam) != d:
            raise ValueError("weight %r does not sum to degree %d" % (lam, d))
        return multinomial(d, lam)
    mu = tuple(mu)
    if sum(mu) != sum(lam):
        raise ValueError("degree mismatch: |mu|=%d, |lam|=%d" % (sum(mu), sum(lam)))
    if kind in ("gamma", "sym"):
        return _matrix_count(mu, lam, None)
    if kind == "wedge":
        return _matrix_count(mu, lam, 1)
    raise ValueError("unknown kind %r" % (kind,))


def multisets(n, d):
    """All multisets of size d over {0..n-1} as sorted index tuples, lex order."""
    return list(itertools.combinations_with_replacement(range(n), d))


def n_multisets(n, d):
    return comb(n + d - 1, d)


@lru_cache(maxsize=None)
def _multiset_rank_table(n, d):
    """T[j, k] = number of size-k multisets over letters >= j (alphabet n)."""
    T = np.zeros((n + 1, d + 1), dtype=np.int64)
    for j in range(n + 1):
        for k in range(d + 1):
            T[j, k] = comb(n - j + k - 1, k) if k > 0 else 1
    return T


def multiset_rank(words, n, d):
    """Vectorized lex rank of sorted index tuples.

    words: integer array of shape (N, d) with rows sorted ascending, entries
    in 0..n-1.  Returns the array of positions in multisets(n, d).
    """
    words = np.asarray(words, dtype=np.int64)
    if d == 0:
        return np.zeros(len(words), dtype=np.int64)
    T = _multiset_rank_table(n, d)
    N = words.shape[0]
    rank = np.zeros(N, dtype=np.int64)
    prev = np.zeros(N, dtype=np.int64)
    for pos in range(d):
        cur = words[:, pos]
        # count multisets whose entry at this position is smaller than cur,
        # given the prefix: sum over letter in [prev, cur) of the number of
        # completions T[letter, d-pos-1].
        k = d - pos - 1
        # cumulative sums of T[:, k] make this a difference of prefix sums
        csum = np.concatenate([[0], np.cumsum(T[:n, k])])
        rank += csum[cur] - csum[prev]
        prev = cur
    return rank


def content(word, n):
    """Content vector (multiplicity of each letter 0..n-1) of an index tuple."""
    c = [0] * n
    for x in word:
        c[x] += 1
    return tuple(c)
