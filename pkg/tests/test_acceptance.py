"""Acceptance criteria A1..A7, one printed pass/fail line per criterion.

Every table comparison is exact integer equality; runtimes are reported in
the line but do not gate the verdict (the stated budgets are expectations,
the tables are the contract).  Criteria outside the resource envelope are
run under an explicit layer-dimension guard so the suite terminates; a
"not attempted" verdict is reported honestly as FAIL for a criterion that
requires a pass, with the reason in the line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines live.
"""

import time
from math import comb

import pytest

from schurext import homalg, theorems


def _line(tag, ok, detail):
    print("\n%s: %s  [%s]" % (tag, "PASS" if ok else "FAIL", detail), flush=True)
    return ok


# ---------------------------------------------------------------------------
# A1: twisted-identity Ext algebra


def test_a1_twisted_identity(shared_cache):
    t0 = time.perf_counter()
    verdicts = {}
    for (p, r) in ((2, 1), (3, 1), (2, 2)):
        rep = theorems.verify_twisted_identity_ext(p, r, cache=shared_cache)
        q = p**r
        want = {i: (1 if i % 2 == 0 and i < 2 * q else 0) for i in range(2 * q + 1)}
        verdicts[(p, r)] = rep.passed and rep.computed["ext"] == want
    ok = all(verdicts.values())
    _line(
        "A1", ok,
        "Ext*(I^(r), I^(r)) = E_r for (p,r) in {(2,1),(3,1),(2,2)}; "
        "%.1f s" % (time.perf_counter() - t0),
    )
    assert ok, verdicts


# ---------------------------------------------------------------------------
# A2: one-class shifts


def test_a2_shift_families(shared_cache):
    t0 = time.perf_counter()
    eps = {"gamma": 0, "wedge": 1, "sym": 2}
    verdicts = {}
    for p in (2, 3):
        for family, e in eps.items():
            rep = theorems.verify_shift_family(
                p, r=1, d=1, family=family, cache=shared_cache
            )
            shift = e * (p - 1)
            row = rep.computed.get("ext", {})
            verdicts[(p, family)] = (
                rep.passed
                and row.get(shift) == 1
                and sum(row.values()) == 1
            )
    ok = all(verdicts.values())
    _line(
        "A2", ok,
        "single class at eps_X(p-1) for X in {gamma,wedge,sym}, p in {2,3}; "
        "%.1f s" % (time.perf_counter() - t0),
    )
    assert ok, verdicts


# ---------------------------------------------------------------------------
# A3: untwisting along the tensor square


def test_a3_untwisting(shared_cache):
    t0 = time.perf_counter()
    verdicts = {}
    for p in (2, 3):
        for mu in ((2,), (1, 1)):
            rep = theorems.verify_untwisting(
                p, r=1, n=2, d=1, mu=mu, cache=shared_cache
            )
            # passed covers ext == aux-graded Hom and the weight-space
            # oracle row (labels "ext" and "hom oracle" both compared)
            verdicts[(p, mu)] = rep.passed and "hom oracle" in rep.computed
    ok = all(verdicts.values())
    _line(
        "A3", ok,
        "Ext*(Gamma^p o tensor^2, S^mu(1)) = aux-graded Hom, oracle-backed, "
        "p in {2,3}, mu in {(2),(1,1)}; %.1f s" % (time.perf_counter() - t0),
    )
    assert ok, verdicts


# ---------------------------------------------------------------------------
# A4: the two-variable example


def test_a4_multivariable(shared_cache):
    t0 = time.perf_counter()
    verdicts = {}
    for p in (2, 3):
        rep = theorems.verify_multivariable_ext(p, cache=shared_cache)
        want = {i: (1 if i % 2 == 0 and i < 2 * p else 0) for i in range(2 * p + 1)}
        verdicts[p] = rep.passed and rep.computed["ext"] == want
    ok = all(verdicts.values())
    _line(
        "A4", ok,
        "Ext*(Gamma^p o boxtimes^2, boxtimes^2(1)) = E_1 dims, p in {2,3}; "
        "%.1f s" % (time.perf_counter() - t0),
    )
    assert ok, verdicts


# ---------------------------------------------------------------------------
# A5: invariant cohomology algebra


def test_a5_invariant_cohomology(shared_cache):
    t0 = time.perf_counter()
    details = {}

    # (a) + (b): the honest Ext blocks at ell=1, d=1
    _, rep_sp = theorems.cohomology_hilbert_series(
        "sp", ell=1, d_max=1, ext_side=True, cache=shared_cache
    )
    details["a"] = rep_sp.passed and rep_sp.computed["ext d=1"] == {
        i: 0 for i in range(5)
    }
    _, rep_o = theorems.cohomology_hilbert_series(
        "o", ell=1, d_max=1, ext_side=True, cache=shared_cache
    )
    details["b"] = rep_o.passed and rep_o.computed["ext d=1"] == {
        0: 1, 1: 0, 2: 1, 3: 0, 4: 1,
    }

    # (c): closed-form tables for d <= 5, ell <= 3 against the independent
    # multiset enumeration
    ok_c = True
    for group in ("sp", "o"):
        for ell in (1, 2, 3):
            _, rep = theorems.cohomology_hilbert_series(
                group, ell=ell, d_max=5, ext_side=False
            )
            ok_c = ok_c and rep.passed
    details["c"] = ok_c

    # (d): r=0 degree-0 rows = fundamental-theorem monomial counts
    ok_d = True
    for group in ("sp", "o"):
        for ell in (1, 2, 3):
            rep = theorems.classical_invariants_check(group, ell, 4)
            ok_d = ok_d and rep.passed
    details["d"] = ok_d

    # the d >= 2 Ext blocks are declared out of envelope: verify they come
    # back "not attempted" rather than wrong or hanging (tiny guard)
    _, rep2 = theorems.cohomology_hilbert_series(
        "o", ell=1, d_max=2, ext_side=True, max_layer_dim=10,
        cache=shared_cache,
    )
    details["d>=2 not attempted"] = (
        "not attempted" in rep2.provenance.get("ext d=2", "")
    )

    ok = all(details.values())
    _line(
        "A5", ok,
        "sp block 0, o block {0:1,2:1,4:1}, closed forms d<=5 ell<=3, "
        "fundamental-theorem rows ell<=3 d<=4; %.1f s"
        % (time.perf_counter() - t0),
    )
    assert ok, details


# ---------------------------------------------------------------------------
# A6: homology of the derived twist adjoint

# resource guard for the p=3 twisted squares, sized so the attempt stays
# inside the stated budget on one core; the honest computation needs
# resolution layers past 2*10^5 dims (see the growth data in the notes)
A6_TWISTED_GUARD = 2000


def test_a6_adjoint_homology(shared_cache):
    t0 = time.perf_counter()
    verdicts = {}
    for p in (2, 3):
        rep = theorems.verify_adjoint_homology(p, case="sym-p", cache=shared_cache)
        verdicts[("sym-p", p)] = rep.passed
        rep = theorems.verify_adjoint_homology(p, case="gamma-p", cache=shared_cache)
        verdicts[("gamma-p", p)] = rep.passed
    reasons = []
    for case in ("twisted-sym2", "twisted-wedge2"):
        rep = theorems.verify_adjoint_homology(
            3, case=case, cache=shared_cache,
            max_layer_dim=A6_TWISTED_GUARD,
        )
        verdicts[(case, 3)] = rep.passed
        if not rep.passed:
            reasons.append("%s: %s" % (case, rep.verdict))
    ok = all(verdicts.values())
    _line(
        "A6", ok,
        "S^p at degree 2(p-1), Gamma^p at 0, twisted squares at p=3%s; %.1f s"
        % ("; " + "; ".join(reasons) if reasons else "",
           time.perf_counter() - t0),
    )
    assert ok, verdicts


# ---------------------------------------------------------------------------
# A7: always-on property battery


def test_a7_property_battery(shared_cache):
    import numpy as np

    from schurext import expr, fplin, polyrep

    t0 = time.perf_counter()
    checks = {}

    # validator invariants on a constructed battery (validate raises)
    for p in (2, 3):
        std = polyrep.standard(p, 3)
        for rep in (
            polyrep.symmetric_power(std, 2),
            polyrep.exterior_power(std, 3),
            polyrep.divided_power(std, 3),
            polyrep.frobenius_twist(polyrep.standard(p, p), 1),
            polyrep.tensor(polyrep.symmetric_power(std, 2), std),
            polyrep.boxtimes(std, polyrep.standard(p, 2)),
            polyrep.kuhn_dual(polyrep.divided_power(std, 2)),
            polyrep.direct_sum(std, polyrep.exterior_power(std, 2)),
        ):
            polyrep.validate(rep, full=True)
    checks["validator"] = True

    # rank-nullity through every differential of a small resolution
    S2 = polyrep.symmetric_power(polyrep.standard(2, 2), 2)
    R = homalg.resolve(S2, 3, cache=shared_cache)
    ok_rn = True
    for d in R.diffs:
        M = np.asarray(d.todense()) % 2
        rk = fplin.rank(M, 2)
        nullity = fplin.kernel_basis(M, 2).shape[1]
        ok_rn = ok_rn and (rk + nullity == M.shape[1])
    checks["rank-nullity"] = ok_rn

    # Kunneth convolution vs direct computation in low degree
    A1 = polyrep.divided_power(polyrep.standard(2, 2), 2)
    B1 = polyrep.frobenius_twist(polyrep.standard(2, 2), 1)
    factor = homalg.ext_groups(A1, B1, 3, cache=shared_cache)
    direct = homalg.ext_groups(
        polyrep.boxtimes(A1, A1), polyrep.boxtimes(B1, B1), 3,
        cache=shared_cache,
    )
    checks["kunneth"] = (
        direct.collapse() == homalg.kunneth_ext(factor, factor, 3).collapse()
    )

    # duality Ext symmetry: Ext(F, G) = Ext(G#, F#)
    Sp = polyrep.symmetric_power(polyrep.standard(2, 2), 2)
    Gt = polyrep.frobenius_twist(polyrep.standard(2, 2), 1)
    t1 = homalg.ext_groups(Sp, Gt, 2, cache=shared_cache).collapse()
    t2 = homalg.ext_groups(
        polyrep.kuhn_dual(Gt), polyrep.kuhn_dual(Sp), 2, cache=shared_cache
    ).collapse()
    checks["duality"] = t1 == t2

    # twist Hom-embedding: Hom(F, G) embeds into Hom(F^(1), G^(1))
    ok_tw = True
    for p in (2, 3):
        F = polyrep.divided_power(polyrep.standard(p, 2), 2)
        G = polyrep.symmetric_power(polyrep.standard(p, 2), 2)
        a = homalg.hom_space(F, G).dim
        b = homalg.hom_space(
            polyrep.frobenius_twist(F, 1), polyrep.frobenius_twist(G, 1)
        ).dim
        ok_tw = ok_tw and a <= b and a > 0
    checks["twist-embedding"] = ok_tw

    # adjunction dim equality: Hom(l^1 F, G) = Hom(F, G^(1))
    ok_adj = True
    for p in (2, 3):
        X = polyrep.standard(p, 2)
        for F in (polyrep.symmetric_power(X, p), polyrep.divided_power(X, p)):
            lF = homalg.ell_r(F, 1, cache=shared_cache)
            lhs = homalg.hom_space(lF, X).dim if lF.dim else 0
            rhs = homalg.hom_space(F, polyrep.frobenius_twist(X, 1)).dim
            ok_adj = ok_adj and lhs == rhs
    checks["adjunction"] = ok_adj

    # cup-product lift independence: square the degree-2 class of
    # Ext(S^2, I^(1)) at p=2 with two independently perturbed lifts
    X = polyrep.symmetric_power(polyrep.standard(2, 4), 2)
    I1 = polyrep.frobenius_twist(polyrep.standard(2, 4), 1)
    E1 = homalg.ExtComputation(
        polyrep.divided_power(X, 1), I1, 3, cache=shared_cache
    )
    E12 = homalg.ExtComputation(
        polyrep.divided_power(X, 2), polyrep.tensor(I1, I1), 4,
        cache=shared_cache,
    )
    z = E1.cocycle_basis(2)
    x = next(
        z[:, j] for j in range(z.shape[1]) if not E1.is_coboundary(2, z[:, j])
    )
    psi1 = homalg.CupProduct(
        X, 1, 1, E1, E1, E12, rng=np.random.default_rng(7)
    ).product(2, x, 2, x)
    psi2 = homalg.CupProduct(
        X, 1, 1, E1, E1, E12, rng=np.random.default_rng(99)
    ).product(2, x, 2, x)
    checks["cup-lift"] = (not E12.is_coboundary(4, psi1)) and E12.classes_equal(
        4, psi1, psi2
    )

    # oracle agreement of every weight space, degrees <= 6, m <= 6
    ok_oracle = True
    cases = [
        ("gamma(3) o wedge(2)", 3, 6),
        ("sym(2) o sym(2)", 2, 4),
        ("twist(sym(2), 1)", 3, 6),
        ("gamma(2) o tensorpow(2)", 2, 4),
        ("wedge(4)", 5, 4),
    ]
    for text, p, m in cases:
        ast = expr.parse(text)
        rep = expr.evaluate(ast, p, (m,))
        seen = {}
        for w in rep.weights:
            seen[w] = seen.get(w, 0) + 1
        for w, n in seen.items():
            ok_oracle = ok_oracle and (
                expr.oracle_weight_dim(ast, p, (m,), w) == n
            )
    checks["weight-oracle"] = ok_oracle

    ok = all(checks.values())
    _line(
        "A7", ok,
        ", ".join(sorted(checks)) + "; %.1f s" % (time.perf_counter() - t0),
    )
    assert ok, checks
