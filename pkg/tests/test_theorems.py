"""Verification reports: each check must reproduce its own closed form.

Pinned values and their provenance:
- the twisted-identity Ext table at p=2, r=1 is {0: 1, 2: 1} (one class in
  each even degree below 2p^r);
- the one-class shifts at p=2, d=1 sit at degree 0 / 1 / 2 for the divided,
  exterior and symmetric families (eps = 0, 1, 2 times p^r d - d);
- E_1 is one-dimensional in each even degree 0 .. 2p-2, so S^2(E_1 (x) k^4)
  at p=2 has parameter-degree dims 10 / 16 / 10 (squares, mixed, squares)
  and E_1 (x) (k^4)^{(x)2} has dims 16 / 16 in degrees 0 and 2 -- these are
  the expected adjoint homology rows for the twisted square and for
  Gamma^2 o tensor^2;
- the all-ones weight of S^(2) on k^2 is the single monomial xy, and of
  S^(1,1) = S^1 (x) S^1 the two vectors x(x)y, y(x)x: the untwisting Hom
  rows are 1 resp. 2 per parameter degree;
- hom d=1 of the invariant checks counts the pairing generators: 1 for sp
  at ell=2 (the single (1|2)), 3 for o (the (i|j) with i <= j).

Everything else in this file is structural (verdict logic, serialization,
resource-guard behavior) and asserts no table values.
"""

import json

import pytest

from schurext import homalg, theorems


# ---------------------------------------------------------------------------
# report plumbing


def test_report_settle_pass_and_fail():
    rep = theorems.CheckReport("x", {})
    rep.computed["t"] = {0: 1}
    rep.predicted["t"] = {0: 1}
    assert rep.settle().passed
    rep.predicted["t"] = {0: 2}
    assert not rep.settle().passed
    rep.verdict = "not attempted"
    assert not rep.settle().passed
    assert rep.verdict == "not attempted"


def test_report_serialization_roundtrip():
    rep = theorems.verify_twisted_identity_ext(2, 1)
    d = json.loads(rep.to_json())
    assert d["schema"] == theorems.REPORT_SCHEMA
    assert d["verdict"] == "pass"
    assert d["computed"]["ext"]["0"] == 1
    md = rep.to_markdown()
    assert "fs-star: pass" in md
    assert "| 2 | 1 | 1 |" in md


# ---------------------------------------------------------------------------
# fs-star


def test_twisted_identity_ext_p2():
    rep = theorems.verify_twisted_identity_ext(2, 1)
    assert rep.passed
    assert rep.computed["ext"] == {0: 1, 1: 0, 2: 1, 3: 0, 4: 0}


def test_twisted_identity_guard_is_not_attempted():
    rep = theorems.verify_twisted_identity_ext(2, 1, max_layer_dim=1)
    assert rep.verdict == "not attempted"
    assert not rep.passed
    assert rep.reason


# ---------------------------------------------------------------------------
# chalupnik


@pytest.mark.parametrize(
    "family,row",
    [
        ("gamma", {0: 1, 1: 0, 2: 0, 3: 0}),
        ("wedge", {0: 0, 1: 1, 2: 0, 3: 0}),
        ("sym", {0: 0, 1: 0, 2: 1, 3: 0}),
    ],
)
def test_shift_family_p2(family, row):
    rep = theorems.verify_shift_family(2, family=family)
    assert rep.passed
    assert rep.computed["ext"] == row


def test_shift_family_rejects_unknown_family():
    with pytest.raises(ValueError):
        theorems.verify_shift_family(2, family="weyl")


def test_shift_family_d2_is_not_attempted():
    rep = theorems.verify_shift_family(2, d=2)
    assert rep.verdict == "not attempted"
    assert "envelope" in rep.reason


# ---------------------------------------------------------------------------
# twist stability


def test_twist_stability_r0_collapse():
    rep = theorems.verify_twist_stability(3, 0, F="gamma2")
    assert rep.passed
    assert rep.computed["hom"] == {0: 1}
    rep = theorems.verify_twist_stability(3, 0, F="tensor2")
    assert rep.computed["hom"] == {0: 2}


def test_twist_stability_r1_hom_degree():
    rep = theorems.verify_twist_stability(3, 1, F="gamma2")
    assert rep.passed
    assert rep.computed["hom"] == {0: 1}
    rep = theorems.verify_twist_stability(2, 1, F="sym2", G="wedge2")
    assert rep.passed
    assert rep.computed["hom"] == {0: 1}


def test_twist_stability_rejects_unknown_functor():
    with pytest.raises(ValueError):
        theorems.verify_twist_stability(2, 1, F="cube")


# ---------------------------------------------------------------------------
# untwisting


def test_untwisting_p2_sym2(shared_cache):
    rep = theorems.verify_untwisting(2, mu=(2,), cache=shared_cache)
    assert rep.passed
    assert rep.computed["ext"] == {0: 1, 1: 0, 2: 1}
    assert rep.predicted["hom oracle"] == {0: 1, 2: 1}


def test_untwisting_p2_sym11(shared_cache):
    rep = theorems.verify_untwisting(2, mu=(1, 1), cache=shared_cache)
    assert rep.passed
    assert rep.computed["ext"] == {0: 2, 1: 0, 2: 2}


def test_untwisting_rejects_wrong_mu_weight():
    with pytest.raises(ValueError):
        theorems.verify_untwisting(2, n=2, d=1, mu=(3,))


def test_untwisting_d0_trivial():
    rep = theorems.verify_untwisting(2, d=0, mu=())
    assert rep.passed
    assert rep.computed["ext"] == {0: 1}


# ---------------------------------------------------------------------------
# multivariable


def test_multivariable_p2():
    rep = theorems.verify_multivariable_ext(2)
    assert rep.passed
    assert rep.computed["ext"] == {0: 1, 1: 0, 2: 1, 3: 0, 4: 0}


# ---------------------------------------------------------------------------
# Hilbert tables


def test_hilbert_closed_form_o_ell1():
    table, rep = theorems.cohomology_hilbert_series(
        "o", ell=1, d_max=2, ext_side=False
    )
    assert rep.passed
    assert table.row(0) == {0: 1}
    assert table.row(1) == {0: 1, 2: 1, 4: 1}
    assert table.row(2) == {0: 1, 2: 1, 4: 2, 6: 1, 8: 1}


def test_hilbert_rows_match_enumeration_sweep():
    from math import comb

    for group in ("sp", "o"):
        for ell in (1, 2, 3):
            table, rep = theorems.cohomology_hilbert_series(
                group, ell=ell, d_max=4, ext_side=False
            )
            assert rep.passed
            n = len(theorems.invariant_generators(group, 3, 1, ell))
            for d in range(5):
                want = 1 if d == 0 else comb(n + d - 1, d)
                assert sum(table.row(d).values()) == want


def test_hilbert_sp_ell1_is_pure():
    # sp at ell=1 has no pairing indices at all: only the empty monomial
    table, rep = theorems.cohomology_hilbert_series(
        "sp", ell=1, d_max=3, ext_side=False
    )
    assert rep.passed
    assert table.row(0) == {0: 1}
    for d in (1, 2, 3):
        assert table.row(d) == {}


def test_hilbert_rejects_p2():
    with pytest.raises(ValueError):
        theorems.cohomology_hilbert_series("o", p=2)
    with pytest.raises(ValueError):
        theorems.pairing_indices("u", 2)


def test_hilbert_table_rendering():
    table, _ = theorems.cohomology_hilbert_series(
        "o", ell=1, d_max=1, ext_side=False
    )
    d = json.loads(table.to_json())
    assert d["schema"] == "schurext-hilbert-v1"
    assert d["rows"]["1"] == {"0": 1, "2": 1, "4": 1}
    assert "| d |" in table.to_markdown()


def test_classical_invariants_small():
    rep = theorems.classical_invariants_check("sp", 2, 3)
    assert rep.passed
    assert rep.computed["hom d=1"] == {0: 1}
    rep = theorems.classical_invariants_check("o", 2, 3)
    assert rep.passed
    assert rep.computed["hom d=1"] == {0: 3}
    assert rep.computed["d=2"] == {"series": 6, "enumeration": 6}


# ---------------------------------------------------------------------------
# adjoint homology


def test_adjoint_homology_gamma_p_p2():
    rep = theorems.verify_adjoint_homology(2, case="gamma-p")
    assert rep.passed
    assert rep.computed["homology dims"] == {0: 2, 1: 0}


def test_adjoint_homology_sym_p_p2():
    rep = theorems.verify_adjoint_homology(2, case="sym-p")
    assert rep.passed
    assert rep.computed["homology dims"] == {0: 0, 1: 0, 2: 2, 3: 0}


def test_adjoint_homology_twisted_square_p2(shared_cache):
    rep = theorems.verify_adjoint_homology(
        2, case="twisted-sym2", cache=shared_cache
    )
    assert rep.passed
    assert rep.computed["homology dims"] == {0: 10, 1: 0, 2: 16, 3: 0, 4: 10}
    assert rep.computed["weights deg 0"] == rep.predicted["weights deg 0"]


def test_adjoint_homology_gamma_tensor2_p2(shared_cache):
    rep = theorems.verify_adjoint_homology(
        2, case="gamma-p-tensor2", cache=shared_cache
    )
    assert rep.passed
    assert rep.computed["homology dims"] == {0: 16, 1: 0, 2: 16}


def test_adjoint_homology_unknown_case():
    with pytest.raises(ValueError):
        theorems.verify_adjoint_homology(2, case="cube")


def test_adjoint_homology_guard_is_not_attempted():
    rep = theorems.verify_adjoint_homology(
        3, case="twisted-sym2", max_layer_dim=50
    )
    assert rep.verdict == "not attempted"
    assert not rep.passed


# ---------------------------------------------------------------------------
# reproducibility


def test_reports_reproducible_with_warm_cache(shared_cache):
    a = theorems.verify_twisted_identity_ext(2, 1, cache=shared_cache)
    b = theorems.verify_twisted_identity_ext(2, 1, cache=shared_cache)
    da, db = a.to_dict(), b.to_dict()
    da.pop("seconds"), db.pop("seconds")
    assert da == db


def test_checks_registry_names():
    assert set(theorems.CHECKS) == {
        "fs-star", "chalupnik", "twist-stability", "untwisting",
        "multivariable", "hilbert-3311", "invariants-ft", "lell",
    }
