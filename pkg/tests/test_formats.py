import pytest

from codedshift.errors import BadParams, ParseError
from codedshift.formats import load_code, load_sft, parse_builtin, parse_code_text, parse_sft_text


def test_code_file_with_alphabet():
    fam = parse_code_text("# golden\nalphabet: 0 1\nword: 0\nword: 0 1\n")
    assert sorted(fam.alphabet.show(w) for w in fam.explicit.words) == ["0", "01"]


def test_compact_words_and_inferred_alphabet():
    fam = parse_code_text("word: 10\nword: 1\nword: 01\n")
    assert fam.alphabet.names == ("0", "1")
    assert len(fam.explicit.words) == 3


def test_multi_character_symbols():
    fam = parse_code_text("alphabet: a bb c\nword: a bb\nword: c\n")
    assert {fam.alphabet.show(w) for w in fam.explicit.words} == {"a bb", "c"}


def test_builtin_directive():
    fam = parse_code_text("builtin: full_shift k=3\n")
    assert fam.series.max_length == 1 and fam.series.count(1) == 3


@pytest.mark.parametrize("text", ["full_shift k=3", "full_shift:k=3"])
def test_builtin_reference_forms(text):
    assert parse_builtin(text).params == {"k": 3}


def test_load_code_references(tmp_path):
    assert load_code("builtin:dyck").name == "dyck"
    assert load_code("words:0,01").series.count(2) == 1
    path = tmp_path / "bad.code"
    path.write_text("word: 1\nword: 10\nword: 01\n")
    assert load_code(str(path)).name == "bad.code"


@pytest.mark.parametrize("text, error", [
    ("nonsense\n", ParseError),
    ("alphabet: 0 1\nword: 2\n", ParseError),
    ("colour: red\n", ParseError),
    ("builtin: dyck\nword: 0\n", ParseError),
    ("builtin: full_shift k=x\n", BadParams),
    ("", ParseError),
])
def test_code_parse_errors(text, error):
    with pytest.raises(error):
        parse_code_text(text)


def test_missing_code_file():
    with pytest.raises(ParseError):
        load_code("/no/such/file.code")


def test_sft_file(tmp_path):
    path = tmp_path / "golden.sft"
    path.write_text("letters: 0 1\nforbid: 1 1\n")
    sft = load_sft(str(path), "1")
    assert sft.distinguished == 1
    assert not sft.allowed[1, 1] and sft.allowed[0, 1]


@pytest.mark.parametrize("text", [
    "forbid: 0 0\n",
    "letters: 0 1\nforbid: 0\n",
    "letters: 0 1\nforbid: 0 7\n",
    "letters: 0 1\nshape: x\n",
])
def test_sft_parse_errors(text):
    with pytest.raises(ParseError):
        parse_sft_text(text)


def test_sft_unknown_letter():
    with pytest.raises(ParseError):
        parse_sft_text("letters: 0 1\n", "9")
