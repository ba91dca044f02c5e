import pytest
from hypothesis import given, strategies as st

from codedshift.catalog import builtin
from codedshift.codecheck import (
    check_prefix_suffix_disjoint,
    find_double_factorization,
    sardinas_patterson,
)
from codedshift.core import Alphabet, code_family, validate_code_set

from conftest import brute_ambiguous_words, factorization_count


def words(*texts):
    return [tuple(int(ch) for ch in t) for t in texts]


def test_witness_for_1_10_01():
    wit = find_double_factorization(code_family(["1", "10", "01"]), 5)
    assert wit.word == (1, 0, 1)
    assert {wit.parsing_a, wit.parsing_b} == {((1,), (0, 1)), ((1, 0), (1,))}


def test_golden_code_has_no_ambiguity_up_to_20():
    assert find_double_factorization(code_family(["0", "01"]), 20) is None


def test_full_shift_code_has_no_ambiguity():
    assert find_double_factorization(code_family(["0", "1"]), 10) is None


@pytest.mark.parametrize("texts, holds", [
    (("0", "01", "11"), True),
    (("1", "10", "01"), False),
    (("0",), True),
    (("0", "01", "10"), False),
    (("1", "011", "01110", "1110", "10011"), False),
])
def test_sardinas_patterson_verdicts(texts, holds):
    code = words(*texts)
    verdict = sardinas_patterson(code)
    assert verdict.positive is holds
    assert (find_double_factorization(code, 12) is None) is holds
    if not holds:
        w = verdict.witness
        assert factorization_count(w.word, code) >= 2


def test_sp_witness_for_1_10_01_is_101():
    assert sardinas_patterson(words("1", "10", "01")).witness.word == (1, 0, 1)


def test_witness_ties_break_lexicographically():
    # "00" = (0)(0) = (00) is the shortest ambiguity of {0, 00, 1}
    wit = find_double_factorization(words("0", "00", "1"), 6)
    assert wit.word == (0, 0)


@pytest.mark.parametrize("name", ["dyck", "ex_positive_recurrent", "ex_null_recurrent"])
def test_decipherability_certificates(name):
    v = check_prefix_suffix_disjoint(builtin(name), 12)
    assert v.status == "certified"
    assert v.positive


def test_decipherability_fails_for_ambiguous_code():
    v = check_prefix_suffix_disjoint(code_family(["1", "10", "01"]), 6)
    assert v.status == "fails"
    w = v.witness
    assert w.parsing_a != w.parsing_b


def test_explicit_code_without_pattern_is_bounded_only():
    v = check_prefix_suffix_disjoint(code_family(["0", "01"]), 6)
    assert v.status in ("holds_up_to_bound", "fails", "certified")
    assert v.status != "holds"


def test_certified_codes_have_no_short_ambiguity():
    for name in ("dyck", "ex_positive_recurrent"):
        assert find_double_factorization(builtin(name), 10) is None


code_sets = st.lists(
    st.lists(st.integers(0, 1), min_size=1, max_size=4).map(tuple),
    min_size=1, max_size=4, unique=True,
)


@given(code_sets)
def test_sp_matches_brute_force_word_dp(code):
    # exhaustive word DP up to length 12; longer ambiguities are checked via the witness
    brute = brute_ambiguous_words(code, 2, 12)
    verdict = sardinas_patterson(code)
    if brute:
        assert not verdict.positive
        assert find_double_factorization(code, 12).word == min(brute, key=lambda w: (len(w), w))
    if verdict.positive:
        assert not brute
    else:
        assert factorization_count(verdict.witness.word, code) >= 2


@given(st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=4).map(tuple),
                min_size=1, max_size=4, unique=True))
def test_sp_agrees_with_bounded_search_ternary(code):
    total = sum(len(w) for w in code)
    found = find_double_factorization(code, 2 * total + max(len(w) for w in code) * 8)
    assert sardinas_patterson(code).positive == (found is None)


@given(code_sets)
def test_witnesses_revalidate(code):
    wit = find_double_factorization(code, 10)
    if wit is not None:
        assert wit.parsing_a != wit.parsing_b
        assert sum(wit.parsing_a, ()) == wit.word
        assert sum(wit.parsing_b, ()) == wit.word
        assert all(p in set(code) for p in wit.parsing_a + wit.parsing_b)


@given(code_sets)
def test_validated_code_set_gives_same_verdict(code):
    explicit = validate_code_set(code, Alphabet.of_size(2))
    assert sardinas_patterson(explicit).positive == sardinas_patterson(code).positive
