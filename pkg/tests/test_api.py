"""Handler layer: payload shape, status mapping, evaluation-dimension rules.

The faithful evaluation dimension is the homogeneity degree; anything lower
is refused unless asked for by the unsafe override, which must come back
with a warning in the payload.  Values asserted here are either structural
or already pinned in test_homalg / test_theorems.
"""

import pytest

from schurext import api


def test_hom_payload_shape():
    pay = api.run_hom("sym(2)", "wedge(2)", 2)
    assert pay["schema"] == api.PAYLOAD_SCHEMA
    assert pay["command"] == "hom"
    assert pay["status"] == "ok"
    assert pay["eval_dims"] == [2]
    assert pay["dim"] == 1
    assert "warning" not in pay


def test_hom_show_basis():
    pay = api.run_hom("I", "I", 3, eval_dim=3, show_basis=True)
    assert pay["dim"] == 1
    assert pay["basis"] == [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]]


def test_hom_variable_count_mismatch():
    with pytest.raises(api.UsageError):
        api.run_hom("box(I, I)", "sym(2)", 2)


def test_eval_dim_above_degree_is_allowed():
    pay = api.run_hom("sym(2)", "sym(2)", 3, eval_dim=4)
    assert pay["eval_dims"] == [4]
    assert pay["dim"] == 1


def test_eval_dim_below_degree_is_usage_error():
    with pytest.raises(api.UsageError) as e:
        api.run_hom("sym(3)", "sym(3)", 3, eval_dim=2)
    assert "unsafe-eval-dim" in str(e.value)


def test_unsafe_eval_dim_warns():
    pay = api.run_hom("sym(3)", "sym(3)", 3, unsafe_eval_dim=2)
    assert pay["eval_dims"] == [2]
    assert "truncates" in pay["warning"]


def test_bad_expression_is_usage_error():
    with pytest.raises(api.UsageError):
        api.run_ext("sym((", "I", 2, 1)


def test_ext_payload_and_guard():
    pay = api.run_ext("gamma(2)", "twist(I, 1)", 2, 2)
    assert pay["status"] == "ok"
    assert pay["table"] == {"0": 1}
    pay = api.run_ext("gamma(2)", "twist(I, 1)", 2, 2, max_layer_dim=1)
    assert pay["status"] == "guard"
    assert "reason" in pay


def test_ext_table_by_aux():
    pay = api.run_ext("twist(I, 1)", "twist(I, 1)", 2, 2, show_aux=True)
    assert pay["table"] == {"0": 1, "2": 1}
    assert sum(pay["table_by_aux"].values()) == 2


def test_resolve_reports_layers():
    pay = api.run_resolve("sym(2)", 2, 2)
    assert pay["status"] == "ok"
    assert pay["layer_dims"][0] >= 1
    assert all("weight" in g for layer in pay["layers"] for g in layer)


def test_lell_identity_of_gamma_p():
    pay = api.run_lell("gamma(2)", 2, 1, 1)
    assert pay["status"] == "ok"
    assert pay["homology_dims"] == {"0": 2, "1": 0}


def test_hilbert_closed_form_only():
    pay = api.run_hilbert("o", 3, 1, 1, 2, closed_form_only=True)
    assert pay["status"] == "ok"
    assert pay["table"]["2"] == {"0": 1, "2": 1, "4": 2, "6": 1, "8": 1}
    with pytest.raises(api.UsageError):
        api.run_hilbert("u", 3, 1, 1, 1)


def test_verify_defaults_and_overrides():
    pay = api.run_verify("fs-star")
    assert pay["status"] == "ok"
    assert pay["report"]["verdict"] == "pass"
    pay = api.run_verify("chalupnik", p=2, family="wedge")
    assert pay["report"]["verdict"] == "pass"


def test_verify_rejects_unknown_check_and_param():
    with pytest.raises(api.UsageError):
        api.run_verify("riemann")
    with pytest.raises(api.UsageError):
        api.run_verify("fs-star", flavor="left")


def test_verify_guard_maps_to_guard_status():
    pay = api.run_verify("fs-star", p=2, r=1, max_layer_dim=1)
    assert pay["status"] == "guard"
    assert pay["report"]["verdict"] == "not attempted"


def test_oracle_pads_weight():
    pay = api.run_oracle("sym(3)", (2, 1), 3)
    assert pay["status"] == "ok"
    assert pay["weight"] == [[2, 1, 0]]
    assert pay["dim"] == 1


def test_oracle_rejects_overlong_weight():
    with pytest.raises(api.UsageError):
        api.run_oracle("sym(2)", (1, 1, 1), 2)


def test_cache_stats_and_clear(tmp_path):
    root = str(tmp_path / "c")
    pay = api.run_cache("stats", cache_dir=root)
    assert pay["entries"] == 0
    api.run_ext("gamma(2)", "twist(I, 1)", 2, 2, cache_dir=root)
    pay = api.run_cache("stats", cache_dir=root)
    assert pay["entries"] >= 1
    pay = api.run_cache("clear", cache_dir=root)
    assert pay["status"] == "ok"
    assert api.run_cache("stats", cache_dir=root)["entries"] == 0
    with pytest.raises(api.UsageError):
        api.run_cache("prune", cache_dir=root)
