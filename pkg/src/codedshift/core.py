"""Alphabets, words, and code-word sets.

Words are plain tuples of symbol indices.  A code set is either an explicit
finite :class:`ExplicitCodeSet` or a :class:`CodeFamily`, which carries an
exact count series, an enumerator, and property flags with provenance.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, NamedTuple, Optional, Sequence, Tuple

from .errors import BadSymbol, DuplicateWord, EmptyCodeSet, EnumeratorUnavailable
from .genfun import CountSeries, finite_series

Word = Tuple[int, ...]

# provenance labels for flags and exact values
ASSERTED = "asserted-by-paper"
VERIFIED_BOUNDED = "verified-bounded"
DECIDED = "decided"
CERTIFIED = "certified-pattern"
UNKNOWN = "unknown"

FLAG_NAMES = ("unique_decipherability", "unique_decomposition", "B_disjoint_from_L")


@dataclass(frozen=True)
class Alphabet:
    names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(str(n) for n in self.names))
        if not self.names:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.names)) != len(self.names):
            raise ValueError("alphabet has duplicate symbols")

    @classmethod
    def of_size(cls, k: int) -> "Alphabet":
        return cls(tuple(str(i) for i in range(k)))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise BadSymbol(None, name) from None

    def parse(self, text) -> Word:
        """Word from a space-separated string, or a compact string of 1-char names."""
        if isinstance(text, str):
            tokens = text.split() if " " in text.strip() else list(text.strip())
        else:
            tokens = list(text)
        out = []
        for pos, tok in enumerate(tokens):
            try:
                out.append(self.names.index(str(tok)))
            except ValueError:
                raise BadSymbol(pos, tok) from None
        return tuple(out)

    def show(self, word: Sequence[int]) -> str:
        parts = [self.names[s] for s in word]
        if all(len(p) == 1 for p in self.names):
            return "".join(parts)
        return " ".join(parts)


class Flag(NamedTuple):
    value: Optional[bool]
    provenance: str = UNKNOWN

    @property
    def holds(self) -> bool:
        return self.value is True


def _unknown_flags() -> Dict[str, Flag]:
    return {name: Flag(None, UNKNOWN) for name in FLAG_NAMES}


@dataclass(frozen=True)
class ExactValue:
    """A closed-form real with its float value and where it comes from."""

    value: float
    label: str
    provenance: str = "exact-builtin"


@dataclass(frozen=True)
class ExplicitCodeSet:
    alphabet: Alphabet
    words: frozenset

    @property
    def max_length(self) -> int:
        return max(len(w) for w in self.words)

    def by_length(self) -> Dict[int, int]:
        return dict(Counter(len(w) for w in self.words))


def validate_code_set(words: Iterable[Sequence[int]], alphabet: Alphabet) -> ExplicitCodeSet:
    """Check a list of words and freeze it into an :class:`ExplicitCodeSet`."""
    seen = set()
    k = len(alphabet)
    for w in words:
        w = tuple(w)
        if not w:
            raise BadSymbol(0, "<empty word>")
        for pos, s in enumerate(w):
            if not isinstance(s, int) or not 0 <= s < k:
                raise BadSymbol(pos, s)
        if w in seen:
            raise DuplicateWord(alphabet.show(w))
        seen.add(w)
    if not seen:
        raise EmptyCodeSet("code set is empty")
    return ExplicitCodeSet(alphabet, frozenset(seen))


@dataclass(frozen=True)
class Factors:
    """Length-m prefixes, suffixes and subwords of code words of length <= cap."""

    prefixes: frozenset
    suffixes: frozenset
    subwords: frozenset


@dataclass(frozen=True, eq=False)
class CodeFamily:
    """A (possibly infinite) code-word set described by counts and an enumerator.

    ``factors`` is an optional structural fast path ``(m, cap) -> Factors``; the
    language oracle falls back to slicing enumerated words without it.
    ``prefix_suffix_pattern`` records a proof that no word is both a proper
    prefix and a proper suffix of code words at every length.
    """

    name: str
    alphabet: Alphabet
    series: CountSeries
    enumerator: Optional[Callable[[int], Iterable[Word]]] = None
    flags: Dict[str, Flag] = field(default_factory=_unknown_flags)
    exact_hL: Optional[ExactValue] = None
    exact_f_at_hL: Optional[ExactValue] = None
    exact_abscissa: Optional[ExactValue] = None
    factors: Optional[Callable[[int, int], Factors]] = None
    prefix_suffix_pattern: bool = False
    params: Dict[str, int] = field(default_factory=dict)
    notes: Tuple[str, ...] = ()
    explicit: Optional[ExplicitCodeSet] = None

    def __post_init__(self):
        flags = _unknown_flags()
        flags.update(self.flags)
        object.__setattr__(self, "flags", flags)

    @property
    def finite(self) -> bool:
        return self.series.finite

    def flag(self, name: str) -> Flag:
        return self.flags[name]

    def with_flags(self, **updates: Flag) -> "CodeFamily":
        flags = dict(self.flags)
        flags.update(updates)
        return replace(self, flags=flags)

    def show(self, word: Sequence[int]) -> str:
        return self.alphabet.show(word)


def family_from_code_set(code: ExplicitCodeSet, name: str = "explicit") -> CodeFamily:
    words = sorted(code.words, key=lambda w: (len(w), w))
    series = finite_series(code.by_length(), name=name)
    return CodeFamily(
        name=name,
        alphabet=code.alphabet,
        series=series,
        enumerator=lambda cap: [w for w in words if len(w) <= cap],
        exact_hL=ExactValue(float("-inf"), "-inf (finite code)", "exact-finite"),
        explicit=code,
    )


def code_family(words: Iterable[str], alphabet: Optional[Alphabet] = None,
                name: str = "explicit") -> CodeFamily:
    """Convenience constructor from compact strings like ``["0", "01"]``."""
    words = list(words)
    if alphabet is None:
        symbols = sorted({ch for w in words for ch in w})
        alphabet = Alphabet(tuple(symbols) or ("0",))
    parsed = [alphabet.parse(w) for w in words]
    return family_from_code_set(validate_code_set(parsed, alphabet), name=name)


def counts_of(family: CodeFamily, n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return family.series.count(n)


def enumerate_code_words(family: CodeFamily, max_len: int) -> frozenset:
    """All code words of length <= max_len."""
    if family.enumerator is None:
        raise EnumeratorUnavailable(f"family {family.name!r} has no enumerator")
    return frozenset(tuple(w) for w in family.enumerator(max_len) if len(w) <= max_len)
