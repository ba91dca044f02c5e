"""Text formats for code sets and nearest-neighbour SFTs.

Code-set files hold one directive per line::

    # golden mean code
    alphabet: 0 1
    word: 0
    word: 0 1

or a single ``builtin: <id> [key=value ...]`` line.  SFT files::

    letters: 0 1
    forbid: 1 1
"""

from __future__ import annotations

import os
from typing import List, Optional, Tuple

from .catalog import BuiltinSpec, builtin
from .core import Alphabet, CodeFamily, family_from_code_set, validate_code_set
from .errors import BadParams, ParseError
from .sft import SftSpec


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            key, sep, value = line.partition(":")
            if not sep:
                raise ParseError(f"line {number}: expected 'directive: value', got {raw!r}")
            yield number, key.strip().lower(), value.strip()


def parse_builtin(text: str) -> BuiltinSpec:
    """``"full_shift k=3"`` or ``"full_shift:k=3"`` -> BuiltinSpec."""
    parts = text.replace(":", " ").replace(",", " ").split()
    if not parts:
        raise ParseError("empty builtin reference")
    params = {}
    for item in parts[1:]:
        key, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"builtin parameter {item!r} is not key=value")
        try:
            params[key] = int(value)
        except ValueError:
            raise BadParams(f"parameter {key!r} must be an integer, got {value!r}") from None
    return BuiltinSpec(parts[0], params)


def parse_code_text(text: str, name: str = "explicit") -> CodeFamily:
    alphabet: Optional[Alphabet] = None
    words: List[Tuple[int, List[str]]] = []
    spec = None
    for number, key, value in _lines(text):
        if key == "alphabet":
            if alphabet is not None:
                raise ParseError(f"line {number}: alphabet given twice")
            try:
                alphabet = Alphabet(tuple(value.split()))
            except ValueError as exc:
                raise ParseError(f"line {number}: {exc}") from None
        elif key == "word":
            tokens = value.split()
            if not tokens:
                raise ParseError(f"line {number}: empty word")
            words.append((number, tokens))
        elif key == "builtin":
            spec = parse_builtin(value)
        else:
            raise ParseError(f"line {number}: unknown directive {key!r}")
    if spec is not None:
        if words:
            raise ParseError("a builtin reference cannot be mixed with word lines")
        return builtin(spec)
    if alphabet is None:
        names = sorted({t for _, ts in words for t in _split(ts, None)})
        if not names:
            raise ParseError("no alphabet and no words")
        alphabet = Alphabet(tuple(names))
    parsed = []
    for number, tokens in words:
        try:
            parsed.append(alphabet.parse(_split(tokens, alphabet)))
        except Exception as exc:
            raise ParseError(f"line {number}: {exc}") from None
    return family_from_code_set(validate_code_set(parsed, alphabet), name=name)


def _split(tokens: List[str], alphabet: Optional[Alphabet]) -> List[str]:
    # a single compact token like "01" spells a word over one-character names
    if len(tokens) == 1 and len(tokens[0]) > 1:
        if alphabet is None or (all(len(n) == 1 for n in alphabet.names)
                                and tokens[0] not in alphabet.names):
            return list(tokens[0])
    return tokens


def load_code(ref: str) -> CodeFamily:
    """A family from ``builtin:<id>[:k=v,...]``, ``words:0,01`` or a file path."""
    if ref.startswith("builtin:"):
        return builtin(parse_builtin(ref[len("builtin:"):]))
    if ref.startswith("words:"):
        items = [w.strip() for w in ref[len("words:"):].split(",") if w.strip()]
        text = "\n".join(f"word: {w}" for w in items)
        return parse_code_text(text)
    if not os.path.exists(ref):
        raise ParseError(f"no such code file {ref!r} (use builtin:<id> or words:a,b)")
    with open(ref, encoding="utf-8") as fh:
        return parse_code_text(fh.read(), name=os.path.basename(ref))


def parse_sft_text(text: str, letter: Optional[str] = None) -> SftSpec:
    letters = None
    forbidden = []
    for number, key, value in _lines(text):
        if key == "letters":
            letters = value.split()
        elif key == "forbid":
            pair = value.split()
            if len(pair) != 2:
                raise ParseError(f"line {number}: forbid needs two letters")
            forbidden.append((pair[0], pair[1]))
        else:
            raise ParseError(f"line {number}: unknown directive {key!r}")
    if not letters:
        raise ParseError("missing 'letters:' line")
    for x, y in forbidden:
        for s in (x, y):
            if s not in letters:
                raise ParseError(f"forbid uses unknown letter {s!r}")
    a = 0
    if letter is not None:
        if letter not in letters:
            raise ParseError(f"distinguished letter {letter!r} not in {letters}")
        a = letters.index(letter)
    return SftSpec.from_forbidden(letters, forbidden, a)


def load_sft(path: str, letter: Optional[str] = None) -> SftSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_sft_text(fh.read(), letter)
