"""Module constructors: dimensions against counting oracles, invariant
validation, and a few matrices pinned by hand.

The pinned Gamma^2(k^2) action was computed directly on orbit sums:
q_11 = e1 (x) e1 is sent by E to e0 (x) e1 + e1 (x) e0 = q_01, by E^(2) to
e0 (x) e0 = q_00, and q_01 goes to 2 q_00.
"""

from math import comb

import numpy as np
import pytest

from schurext import fplin, polyrep, weights


def dims_by_weight(rep):
    return {w: len(ix) for w, ix in rep.weight_blocks().items()}


def test_standard():
    A = polyrep.standard(3, 4)
    assert A.dim == 4
    assert A.weights[1] == ((0, 1, 0, 0),)
    polyrep.validate(A, full=True)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_symmetric_power_dims(p):
    A = polyrep.standard(p, 3)
    S = polyrep.symmetric_power(A, 3)
    assert S.dim == comb(3 + 3 - 1, 3)
    for lam in weights.compositions(3, 3):
        expected = weights.weight_space_dim_oracle("sym", (3,), lam)
        got = len(S.weight_blocks().get((tuple(lam),), []))
        assert got == expected
    polyrep.validate(S, full=True)


@pytest.mark.parametrize("p", [2, 3])
def test_divided_power_dims(p):
    A = polyrep.standard(p, 3)
    G = polyrep.divided_power(A, 3)
    assert G.dim == comb(5, 3)
    for lam in weights.compositions(3, 3):
        expected = weights.weight_space_dim_oracle("gamma", (3,), lam)
        assert len(G.weight_blocks().get((tuple(lam),), [])) == expected
    polyrep.validate(G, full=True)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_exterior_power_dims(p):
    A = polyrep.standard(p, 4)
    L = polyrep.exterior_power(A, 2)
    assert L.dim == comb(4, 2)
    for lam in weights.compositions(2, 4):
        expected = weights.weight_space_dim_oracle("wedge", (2,), lam)
        assert len(L.weight_blocks().get((tuple(lam),), [])) == expected
    polyrep.validate(L, full=True)


def test_tensor_power_dims():
    A = polyrep.standard(3, 3)
    T = polyrep.tensor_power(A, 3)
    assert T.dim == 27
    for lam in weights.compositions(3, 3):
        expected = weights.weight_space_dim_oracle("tensor", 3, lam)
        assert len(T.weight_blocks().get((tuple(lam),), [])) == expected
    polyrep.validate(T, full=True)


def test_gamma2_pinned_matrices():
    G = polyrep.divided_power(polyrep.standard(5, 2), 2)
    assert G.labels == [(0, 0), (0, 1), (1, 1)]
    E1 = fplin.to_dense(G.gens[(0, 0, 1, 1)], 5)
    assert E1.tolist() == [[0, 2, 0], [0, 0, 1], [0, 0, 0]]
    E2 = fplin.to_dense(G.gens[(0, 0, 2, 1)], 5)
    assert E2.tolist() == [[0, 0, 1], [0, 0, 0], [0, 0, 0]]
    F1 = fplin.to_dense(G.gens[(0, 0, 1, -1)], 5)
    assert F1.tolist() == [[0, 0, 0], [1, 0, 0], [0, 2, 0]]


def test_sym2_pinned_matrices():
    S = polyrep.symmetric_power(polyrep.standard(5, 2), 2)
    assert S.labels == [(0, 0), (0, 1), (1, 1)]
    E1 = fplin.to_dense(S.gens[(0, 0, 1, 1)], 5)
    # e1.e1 -> 2 e0.e1, e0.e1 -> e0.e0
    assert E1.tolist() == [[0, 1, 0], [0, 0, 2], [0, 0, 0]]


def test_kuhn_dual_involution():
    A = polyrep.symmetric_power(polyrep.standard(3, 3), 2)
    D = polyrep.kuhn_dual(polyrep.kuhn_dual(A))
    assert D.weights == A.weights
    assert (D.aux == A.aux).all()
    for key in A.gens:
        assert (
            fplin.to_dense(D.gens[key], 3) == fplin.to_dense(A.gens[key], 3)
        ).all()


def test_frobenius_twist_structure():
    p = 2
    A = polyrep.symmetric_power(polyrep.standard(p, 2), 2)
    T = polyrep.frobenius_twist(A, 1)
    assert T.degrees == (4,)
    assert T.weights[0] == tuple(
        tuple(2 * x for x in row) for row in A.weights[0]
    )
    for (i, a, k, sign), g in A.gens.items():
        tg = T.gens[(i, a, 2 * k, sign)]
        assert (fplin.to_dense(tg, p) == fplin.to_dense(g, p)).all()
    assert (0, 0, 1, 1) not in T.gens
    polyrep.validate(T, full=True)


def test_twist_commutes_with_tensor():
    p = 3
    A = polyrep.standard(p, 2)
    B = polyrep.symmetric_power(A, 2)
    lhs = polyrep.frobenius_twist(polyrep.tensor(A, B), 1)
    rhs = polyrep.tensor(
        polyrep.frobenius_twist(A, 1), polyrep.frobenius_twist(B, 1)
    )
    assert lhs.weights == rhs.weights
    assert set(lhs.gens) == set(rhs.gens)
    for key in lhs.gens:
        assert (
            fplin.to_dense(lhs.gens[key], p) == fplin.to_dense(rhs.gens[key], p)
        ).all()


def test_boxtimes():
    p = 3
    A = polyrep.standard(p, 2)
    B = polyrep.symmetric_power(polyrep.standard(p, 3), 2)
    X = polyrep.boxtimes(A, B)
    assert X.ms == (2, 3) and X.degrees == (1, 2)
    assert X.dim == A.dim * B.dim
    assert X.weights[0] == (A.weights[0][0], B.weights[0][0])
    polyrep.validate(X, full=True)


def test_multiplicity_tensor_aux():
    p = 2
    U = polyrep.e_r_space(p, 1)
    assert U.degrees == (0, 2)
    M = polyrep.multiplicity_standard(p, 2, U)
    assert M.dim == 4
    assert M.aux.tolist() == [0, 0, 2, 2]
    polyrep.validate(M, full=True)


def test_e_r_space():
    assert polyrep.e_r_space(3, 1).degrees == (0, 2, 4)
    assert polyrep.e_r_space(2, 2).degrees == (0, 2, 4, 6)
    assert polyrep.e_r_space(2, 1).tensor(polyrep.e_r_space(2, 1)).degrees == (
        0, 2, 2, 4,
    )


def test_submodule_spin_example():
    # the submodule of k^2 (x) k^2 generated by e1 (x) e1 over F_2 has dim 3:
    # e1e1, e0e1 + e1e0, e0e0 (the second E application gives 2 e0e0 = 0 but
    # the divided square E^(2) reaches e0e0)
    p = 2
    T = polyrep.tensor_power(polyrep.standard(p, 2), 2)
    seed = np.zeros(T.dim, dtype=np.int64)
    seed[3] = 1  # e1 (x) e1
    sub, incl = polyrep.submodule(T, [seed])
    assert sub.dim == 3
    assert incl.shape == (4, 3)
    polyrep.validate(sub)


def test_submodule_proper():
    # over F_3 the symmetric square sits inside the tensor square as the
    # span of the symmetrized vectors; spinning e0 (x) e0 gives all of it
    p = 3
    T = polyrep.tensor_power(polyrep.standard(p, 2), 2)
    seed = np.zeros(T.dim, dtype=np.int64)
    seed[0] = 1
    sub, _ = polyrep.submodule(T, [seed])
    assert sub.dim == 3


def test_mult_comult_composite():
    # m o Delta on Gamma^2 multiplies by binom(2,1) = 2
    A = polyrep.standard(5, 2)
    comult = polyrep.comultiplication_map(A, 2, (1, 1))
    mult = polyrep.multiplication_map(A, 2, (1, 1))
    G = polyrep.divided_power(A, 2)
    composite = fplin.to_dense((mult @ comult), 5)
    assert (composite == 2 * np.eye(G.dim, dtype=np.int64) % 5).all()


def test_comult_weight_compat():
    A = polyrep.standard(3, 2)
    comult = polyrep.comultiplication_map(A, 3, (2, 1))
    # Delta(q_{0,0,1}) = q_{0,0} (x) q_1 + q_{0,1} (x) q_0
    G3 = polyrep.divided_power(A, 3)
    c = G3.labels.index((0, 0, 1))
    col = fplin.to_dense(comult, 3)[:, c]
    G2 = polyrep.divided_power(A, 2)
    G1 = polyrep.divided_power(A, 1)
    nz = {
        (G2.labels[i // G1.dim], G1.labels[i % G1.dim]): v
        for i, v in enumerate(col)
        if v
    }
    assert nz == {((0, 0), (1,)): 1, ((0, 1), (0,)): 1}


def test_json_roundtrip():
    A = polyrep.symmetric_power(polyrep.standard(3, 2), 2)
    text = A.to_json()
    B = polyrep.PolyRep.from_json(text)
    assert B.to_json() == text
    assert B.weights == A.weights
    for key in A.gens:
        assert (
            fplin.to_dense(B.gens[key], 3) == fplin.to_dense(A.gens[key], 3)
        ).all()


def test_unit_and_total_dims():
    p = 3
    A = polyrep.standard(p, 4)
    assert polyrep.symmetric_power(A, 0).dim == 1
    assert polyrep.divided_power(A, 2).dim == comb(5, 2)
    assert polyrep.exterior_power(A, 3).dim == comb(4, 3)
    assert polyrep.tensor_power(A, 2).dim == 16


def test_composition_of_functors():
    # Gamma^2(Lambda^2(k^3)) evaluates by applying the constructor to the rep
    p = 3
    L = polyrep.exterior_power(polyrep.standard(p, 3), 2)
    G = polyrep.divided_power(L, 2)
    assert G.dim == comb(L.dim + 1, 2)
    assert G.degrees == (4,)
    polyrep.validate(G)


def test_direct_sum():
    p = 2
    A = polyrep.symmetric_power(polyrep.standard(p, 2), 2)
    D = polyrep.direct_sum(A, A)
    assert D.dim == 2 * A.dim
    polyrep.validate(D)
