import itertools

import pytest
from hypothesis import given, strategies as st

from codedshift.catalog import builtin
from codedshift.core import (
    Alphabet,
    code_family,
    counts_of,
    enumerate_code_words,
    validate_code_set,
)
from codedshift.errors import BadSymbol, DuplicateWord, EmptyCodeSet, EnumeratorUnavailable


def shown(family, words):
    return {family.alphabet.show(w) for w in words}


def test_validate_builds_length_classes():
    code = validate_code_set([(0,), (0, 1)], Alphabet.of_size(2))
    assert code.by_length() == {1: 1, 2: 1}


def test_validate_rejects_duplicates():
    with pytest.raises(DuplicateWord):
        validate_code_set([(0,), (0,)], Alphabet.of_size(2))


def test_validate_rejects_empty_set():
    with pytest.raises(EmptyCodeSet):
        validate_code_set([], Alphabet.of_size(2))


def test_validate_rejects_empty_word():
    with pytest.raises(BadSymbol):
        validate_code_set([()], Alphabet.of_size(2))


def test_validate_rejects_bad_symbol_with_position():
    with pytest.raises(BadSymbol) as info:
        validate_code_set([(0, 5)], Alphabet.of_size(2))
    assert info.value.position == 1


def test_alphabet_parse_and_show_round_trip():
    a = Alphabet(("(", "[", ")", "]"))
    assert a.show(a.parse("([])")) == "([])"
    multi = Alphabet(("-1", "0", "1"))
    assert multi.show(multi.parse("-1 0 1")) == "-1 0 1"


def dyck_brute(length):
    """Balanced two-type bracket words that first return to depth zero at the end."""
    out = []
    for w in itertools.product(range(4), repeat=length):
        stack, ok = [], True
        for i, s in enumerate(w):
            if s < 2:
                stack.append(s)
            elif not stack or stack.pop() != s - 2:
                ok = False
                break
            elif not stack and i != length - 1:
                ok = False
                break
        if ok and not stack:
            out.append(w)
    return out


@pytest.mark.parametrize("n, expected", [(2, 2), (4, 4), (6, 16)])
def test_dyck_counts(n, expected):
    assert counts_of(builtin("dyck"), n) == expected


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_dyck_counts_match_brute_enumeration(n):
    fam = builtin("dyck")
    brute = dyck_brute(n)
    assert counts_of(fam, n) == len(brute)
    assert {w for w in enumerate_code_words(fam, n) if len(w) == n} == set(brute)


def test_dyck_odd_lengths_are_empty():
    fam = builtin("dyck")
    assert all(counts_of(fam, n) == 0 for n in (1, 3, 5, 7))


def test_positive_recurrent_count_at_six():
    assert counts_of(builtin("ex_positive_recurrent"), 6) == 8


def test_counts_reject_nonpositive_length():
    with pytest.raises(ValueError):
        counts_of(builtin("dyck"), 0)


def test_enumerate_finite_code_beyond_its_length():
    fam = code_family(["0", "01"])
    assert shown(fam, enumerate_code_words(fam, 5)) == {"0", "01"}


def test_enumerate_positive_recurrent_short_words():
    fam = builtin("ex_positive_recurrent")
    assert shown(fam, enumerate_code_words(fam, 4)) == {"10", "20", "1100", "1200", "2100", "2200"}


def test_enumerate_dyck_length_two():
    fam = builtin("dyck")
    assert shown(fam, enumerate_code_words(fam, 2)) == {"()", "[]"}


def test_enumerate_without_enumerator():
    from dataclasses import replace

    fam = replace(code_family(["0"]), enumerator=None)
    with pytest.raises(EnumeratorUnavailable):
        enumerate_code_words(fam, 3)


# enumerator / count agreement for all builtins; caps keep enumeration small
AGREEMENT_CAPS = [
    ("dyck", {}, 14),
    ("ex_positive_recurrent", {}, 20),
    ("ex_null_recurrent", {}, 11),
    ("nonuniform_spec", {"N": 2}, 20),
    ("nonuniform_spec", {"N": 500}, 4),
    ("full_shift", {"k": 3}, 20),
    ("golden_mean_code", {}, 20),
    ("single_word", {"m": 3}, 20),
]


@pytest.mark.parametrize("name, params, cap", AGREEMENT_CAPS)
def test_enumerator_agrees_with_counts(name, params, cap):
    from codedshift.catalog import BuiltinSpec

    fam = builtin(BuiltinSpec(name, params))
    words = enumerate_code_words(fam, cap)
    assert len(words) == sum(counts_of(fam, n) for n in range(1, cap + 1))
    for n in range(1, cap + 1):
        assert sum(1 for w in words if len(w) == n) == counts_of(fam, n)
    assert all(0 <= s < len(fam.alphabet) for w in words for s in w)


@given(st.sampled_from(["dyck", "ex_positive_recurrent", "ex_null_recurrent", "golden_mean_code"]),
       st.integers(1, 9), st.integers(0, 4))
def test_enumeration_is_monotone_in_cap(name, cap, extra):
    fam = builtin(name)
    assert enumerate_code_words(fam, cap) <= enumerate_code_words(fam, cap + extra)


@given(st.sets(st.text(alphabet="01", min_size=1, max_size=5), min_size=1, max_size=6))
def test_explicit_family_counts_match_words(words):
    fam = code_family(sorted(words), Alphabet.of_size(2))
    for n in range(1, 7):
        assert counts_of(fam, n) == sum(1 for w in words if len(w) == n)
    assert len(enumerate_code_words(fam, 5)) == len(words)
