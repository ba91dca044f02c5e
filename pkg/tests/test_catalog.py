import math

import pytest

from codedshift.catalog import (
    BUILTIN_IDS,
    BuiltinSpec,
    builtin,
    catalan,
    chain_bound,
    dyck_count,
    paper_expectations,
)
from codedshift.core import ASSERTED, counts_of, enumerate_code_words
from codedshift.errors import BadParams
from codedshift.genfun import CERTIFICATE_CHECK_RANGE
from codedshift.language import LanguageOracle, estimate_hL


def test_ids_are_complete():
    assert set(BUILTIN_IDS) == {
        "dyck", "ex_positive_recurrent", "ex_null_recurrent", "nonuniform_spec",
        "full_shift", "golden_mean_code", "single_word",
    }


def test_unknown_id_and_params_are_rejected():
    with pytest.raises(BadParams):
        BuiltinSpec("nope")
    with pytest.raises(BadParams):
        BuiltinSpec("dyck", {"N": 3})
    with pytest.raises(BadParams):
        builtin(BuiltinSpec("full_shift", {"k": 0}))


def test_defaults_are_merged():
    assert BuiltinSpec("nonuniform_spec").params == {"N": 500}
    assert BuiltinSpec("full_shift", {"k": 5}).params == {"k": 5}


def test_dyck_count_formula():
    for n in range(1, 30):
        assert dyck_count(2 * n) == catalan(n - 1) * 2 ** n
        assert dyck_count(2 * n - 1) == 0
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_dyck_counts_exceed_64_bits():
    assert dyck_count(80) > 2 ** 64


def test_dyck_log_counts_agree_with_exact():
    s = builtin("dyck").series
    for j in (2, 10, 101, 500, 1000):
        c = dyck_count(j)
        expected = math.log(c) if c else -math.inf
        assert s.log_count(j) == pytest.approx(expected, rel=1e-13, abs=0)


def test_positive_recurrent_flags_and_entropy():
    fam = builtin("ex_positive_recurrent")
    assert fam.exact_hL.value == pytest.approx(math.log(2))
    for name in ("unique_decipherability", "B_disjoint_from_L"):
        assert fam.flag(name).value is True
        assert fam.flag(name).provenance == ASSERTED


def test_full_shift_is_finite():
    fam = builtin(BuiltinSpec("full_shift", {"k": 2}))
    assert {fam.alphabet.show(w) for w in enumerate_code_words(fam, 5)} == {"0", "1"}
    assert fam.exact_hL.value == -math.inf


def test_null_recurrent_counts():
    fam = builtin("ex_null_recurrent")
    for n in range(2, 200):
        assert counts_of(fam, n + n.bit_length() - 1) == 4 ** n
    assert sum(counts_of(fam, j) for j in range(1, 12)) == sum(4 ** n for n in range(2, 9))


def test_nonuniform_counts():
    N = 7
    fam = builtin(BuiltinSpec("nonuniform_spec", {"N": N}))
    assert counts_of(fam, 1) == 1
    expected = {}
    for n in range(1, 300):
        j = n + 1 + math.floor(math.log(n))
        expected[j] = expected.get(j, 0) + 2 * N ** n
    for j in range(2, 300):
        assert counts_of(fam, j) == expected.get(j, 0)


def test_chain_bound_below_one_for_large_N():
    assert chain_bound(500) < 1
    assert chain_bound(2) == math.inf


@pytest.mark.parametrize("name, params", [
    ("dyck", {}), ("ex_positive_recurrent", {}), ("ex_null_recurrent", {}),
    ("nonuniform_spec", {"N": 500}),
])
def test_certificates_hold_on_checked_range(name, params):
    fam = builtin(BuiltinSpec(name, params))
    for cert in fam.series.certificates:
        for j in range(1, CERTIFICATE_CHECK_RANGE + 1):
            c = fam.series.count(j)
            if c:
                assert math.log(c) <= cert.log_bound(j) + 1e-12


@pytest.mark.parametrize("name, cap, m_max", [
    ("dyck", 12, 6), ("ex_positive_recurrent", 16, 8), ("ex_null_recurrent", 11, 5),
])
def test_factor_fast_path_matches_slicing(name, cap, m_max):
    fam = builtin(name)
    words = enumerate_code_words(fam, cap)
    oracle = LanguageOracle(fam, cap)
    for m in range(1, m_max + 1):
        f = oracle.factors(m)
        long = [w for w in words if len(w) >= m]
        assert f.prefixes == {w[:m] for w in long}
        assert f.suffixes == {w[-m:] for w in long}
        assert f.subwords == {w[i:i + m] for w in long for i in range(len(w) - m + 1)}


def test_exact_entropy_inside_estimate_window():
    est = estimate_hL(builtin("ex_positive_recurrent"), 12, 24)
    assert abs(est.estimate - est.exact) < 0.08


def test_expectations_carry_sources():
    for name in ("dyck", "ex_positive_recurrent", "ex_null_recurrent", "golden_mean_code"):
        for key, (value, source) in paper_expectations(name).items():
            assert source in ("paper-exact", "derived-oracle")
    assert paper_expectations("dyck")["f_at_hL"][0] == pytest.approx(1 / 3)
    assert paper_expectations("ex_null_recurrent")["mme_beyond_L"][0] is False
    assert paper_expectations("ex_positive_recurrent")["moment"][0] == 4.0
