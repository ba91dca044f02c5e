import math
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from codedshift.catalog import BuiltinSpec, builtin, chain_bound
from codedshift.classify import AnalyzeConfig, analyze, mme_beyond_L, vere_jones
from codedshift.core import Alphabet, code_family
from codedshift.errors import RegimeMismatch
from codedshift.genfun import BoundedValue, eval_f

LN2, LN3, LN4 = math.log(2), math.log(3), math.log(4)
LN_PHI = math.log((1 + math.sqrt(5)) / 2)


def test_dyck_is_below_one():
    rep = analyze(builtin("dyck"))
    assert rep.regime == "below_one"
    assert rep.f_at_hL.contains(1 / 3) and rep.f_at_hL.width < 1e-9
    assert rep.hX.lower == rep.hX.upper == LN3
    assert rep.mme_statement == "all_mme_supported_in_L"
    assert rep.vere_jones.cls == "transient"


def test_positive_recurrent_is_equal_one():
    rep = analyze(builtin("ex_positive_recurrent"))
    assert rep.regime == "equal_one"
    assert rep.hX.lower == rep.hX.upper == LN2
    assert rep.vere_jones.cls == "positive_recurrent"
    assert rep.vere_jones.moment_value.contains(4.0)
    assert rep.mme_beyond_L == "exists"


def test_null_recurrent_is_equal_one():
    rep = analyze(builtin("ex_null_recurrent"))
    assert rep.regime == "equal_one"
    assert rep.vere_jones.cls == "null_recurrent"
    assert rep.vere_jones.moment_value.upper == math.inf
    assert rep.mme_beyond_L == "does_not_exist"


def test_golden_code_is_above_one():
    rep = analyze(code_family(["0", "01"]))
    assert rep.regime == "above_one"
    assert rep.hL == -math.inf and rep.f_at_hL.upper == math.inf
    assert abs(rep.hX.midpoint - LN_PHI) < 1e-10
    assert rep.hX.lower > rep.hL
    assert rep.mme_statement == "unique_mme"


def test_ambiguous_finite_code_withholds_conclusion():
    rep = analyze(code_family(["1", "10", "01"]))
    assert rep.regime == "above_one"
    assert not rep.conclusion_available
    assert rep.hX.lower == rep.hL


def test_nonuniform_large_N_is_below_one():
    rep = analyze(builtin(BuiltinSpec("nonuniform_spec", {"N": 500})))
    assert rep.regime == "below_one"
    assert rep.f_at_hL.upper <= chain_bound(500)
    assert rep.hX.lower == pytest.approx(math.log(500))


def test_nonuniform_small_N_decided_by_interval():
    rep = analyze(builtin(BuiltinSpec("nonuniform_spec", {"N": 20})))
    assert rep.regime in ("below_one", "above_one", "undetermined")
    if rep.regime == "below_one":
        assert rep.f_at_hL.upper < 1


def test_estimated_entropy_route():
    rep = analyze(builtin("ex_positive_recurrent"), AnalyzeConfig(hl_estimate_nmax=10))
    assert rep.hL_provenance.startswith("estimated")
    assert abs(rep.hL - LN2) < 0.15


def test_user_supplied_entropy():
    rep = analyze(builtin("dyck"), AnalyzeConfig(hl_exact=LN3))
    assert rep.regime == "below_one"


def test_numeric_value_near_one_is_not_equal_one():
    # strip the closed-form provenance: equality can no longer be asserted
    fam = replace(builtin("ex_positive_recurrent"), exact_f_at_hL=None)
    rep = analyze(fam)
    assert rep.regime != "equal_one"


def test_vere_jones_examples():
    assert vere_jones(builtin("ex_positive_recurrent").series, LN2).cls == "positive_recurrent"
    g = vere_jones(builtin("ex_null_recurrent").series, LN4)
    assert g.cls == "null_recurrent"
    threshold, n = g.divergence_threshold_hit
    assert threshold == 10 and n <= 30000
    d = vere_jones(builtin("dyck").series, 1.5 * LN2)
    assert d.cls == "transient"
    assert d.series_value.contains(0.5) and d.series_value.upper < 1


def test_mme_beyond_L_verdicts():
    assert mme_beyond_L(builtin("ex_positive_recurrent")).verdict == "exists"
    assert mme_beyond_L(builtin("ex_null_recurrent")).verdict == "does_not_exist"
    with pytest.raises(RegimeMismatch):
        mme_beyond_L(builtin("dyck"))


CHEAP = [
    ("dyck", {}),
    ("ex_positive_recurrent", {}),
    ("golden_mean_code", {}),
    ("full_shift", {"k": 3}),
    ("single_word", {"m": 2}),
    ("nonuniform_spec", {"N": 500}),
]


@pytest.mark.parametrize("name, params", CHEAP)
def test_report_invariants(name, params):
    rep = analyze(builtin(BuiltinSpec(name, params)))
    assert rep.hX.lower >= rep.hL
    if rep.hG is not None:
        assert rep.hX.upper >= rep.hG.lower
    if rep.regime in ("below_one", "equal_one"):
        assert rep.hX.lower == rep.hX.upper == rep.hL
    if rep.regime == "above_one":
        assert rep.hX.lower > rep.hL
        v = eval_f(builtin(BuiltinSpec(name, params)).series, rep.hX.midpoint, 400)
        assert abs(v.lower - 1) <= 1e-9 or v.contains(1.0)


@pytest.mark.parametrize("name, params", CHEAP)
def test_doubling_truncation_is_stable(name, params):
    fam = builtin(BuiltinSpec(name, params))
    a = analyze(fam, AnalyzeConfig(trunc=60))
    b = analyze(fam, AnalyzeConfig(trunc=120, max_trunc=1 << 16))
    assert a.regime == b.regime
    assert abs(a.hX.midpoint - b.hX.midpoint) < 1e-9


@settings(max_examples=25)
@given(st.lists(st.text(alphabet="01", min_size=1, max_size=4), min_size=1, max_size=4, unique=True))
def test_finite_codes_follow_the_root(words):
    rep = analyze(code_family(words, Alphabet.of_size(2)))
    assert rep.regime == "above_one"
    assert rep.hX.upper <= math.log(2) + 1e-9 or not rep.conclusion_available
    if rep.conclusion_available:
        # f(hX) = 1 for a uniquely decomposable finite code
        x = rep.hX.midpoint
        total = sum(math.exp(-len(w) * x) for w in words)
        assert abs(total - 1) < 1e-8
