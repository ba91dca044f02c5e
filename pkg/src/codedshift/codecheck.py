"""Unique decomposition and unique decipherability of code sets.

Finite codes get the complete Sardinas-Patterson decision.  Infinite families
get a bounded shortest-counterexample search and, for families with a proved
prefix/suffix pattern, a decipherability certificate.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .core import CodeFamily, ExplicitCodeSet, Word, enumerate_code_words

DECOMPOSITION = "unique_decomposition"
DECIPHERABILITY = "unique_decipherability"


@dataclass(frozen=True)
class FactorizationWitness:
    """A word with two distinct factorizations into code words.

    With ``offset == 0`` both parsings concatenate to ``word``.  With
    ``offset > 0`` the witness is periodic: ``parsing_b`` factors the rotation
    ``word[offset:] + word[:offset]``, so the bi-infinite point ``...word word...``
    has two parsings with different cut positions.
    """

    word: Word
    parsing_a: Tuple[Word, ...]
    parsing_b: Tuple[Word, ...]
    offset: int = 0

    def cuts(self, parsing) -> Tuple[int, ...]:
        out, pos = [], 0
        for piece in parsing:
            pos += len(piece)
            out.append(pos)
        return tuple(out)

    def is_valid(self, code: Iterable[Word]) -> bool:
        code = set(code)
        if not all(p in code for p in self.parsing_a + self.parsing_b):
            return False
        a = sum(self.parsing_a, ())
        b = sum(self.parsing_b, ())
        if self.offset == 0:
            return a == self.word == b and self.parsing_a != self.parsing_b
        n = len(self.word)
        if not 0 < self.offset < n:
            return False
        rotated = self.word[self.offset:] + self.word[: self.offset]
        if a != self.word or b != rotated:
            return False
        cuts_a = {c % n for c in self.cuts(self.parsing_a)}
        cuts_b = {(c + self.offset) % n for c in self.cuts(self.parsing_b)}
        return cuts_a != cuts_b

    def to_dict(self, show) -> dict:
        out = {
            "word": show(self.word),
            "parsing_a": [show(p) for p in self.parsing_a],
            "parsing_b": [show(p) for p in self.parsing_b],
        }
        if self.offset:
            out["offset"] = self.offset
        return out


@dataclass(frozen=True)
class CodeVerdict:
    property: str
    status: str  # holds | fails | holds_up_to_bound | certified
    witness: Optional[FactorizationWitness] = None
    bound: Optional[int] = None
    reason: str = ""

    @property
    def positive(self) -> bool:
        return self.status in ("holds", "certified")

    def to_dict(self, show) -> dict:
        out = {"property": self.property, "verdict": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict(show)
        if self.bound is not None:
            out["bound"] = self.bound
        if self.reason:
            out["reason"] = self.reason
        return out


def _race_edges(words: Sequence[Word], dangling: Word):
    """Extend the lagging parsing by one code word.

    Yields ``(code_word, new_dangling, switched, growth)``: ``new_dangling`` is
    empty when both parsings end together; ``switched`` when the lagging parsing
    overtakes; ``growth`` is how much the covered word gets longer.
    """
    d = len(dangling)
    for c in words:
        n = len(c)
        if n <= d:
            if dangling[:n] == c:
                yield c, dangling[n:], False, 0
        elif c[:d] == dangling:
            yield c, c[d:], True, n - d


def _shortest_ambiguity(words: Sequence[Word], max_len: int) -> Optional[int]:
    """Length of the shortest word with two factorizations (Dijkstra on dangling suffixes)."""
    dist = {}
    heap = []
    for a in words:
        for b in words:
            if len(a) < len(b) and b[: len(a)] == a:
                d = b[len(a):]
                if len(b) <= max_len and dist.get(d, max_len + 1) > len(b):
                    dist[d] = len(b)
                    heapq.heappush(heap, (len(b), d))
    while heap:
        cost, d = heapq.heappop(heap)
        if dist.get(d) != cost:
            continue
        if not d:
            return cost
        for _, nd, _, growth in _race_edges(words, d):
            nc = cost + growth
            if nc <= max_len and dist.get(nd, max_len + 1) > nc:
                dist[nd] = nc
                heapq.heappush(heap, (nc, nd))
    return None


def _ambiguities_of_length(words: Sequence[Word], length: int):
    """All (word, parsing_a, parsing_b) of the given length starting with distinct factors."""
    found = []

    def walk(word, lead, lag, dangling):
        for c, nd, switched, growth in _race_edges(words, dangling):
            if len(word) + growth > length:
                continue
            if switched:
                nw = word + nd
                new_lead, new_lag = lag + (c,), lead
            else:
                nw = word
                new_lead, new_lag = lead, lag + (c,)
            if not nd:
                if len(nw) == length:
                    found.append((nw, new_lead, new_lag))
                continue
            walk(nw, new_lead, new_lag, nd)

    for a in words:
        for b in words:
            if len(a) < len(b) <= length and b[: len(a)] == a:
                walk(b, (b,), (a,), b[len(a):])
    return found


def _witness_from(word, p, q) -> FactorizationWitness:
    w = FactorizationWitness(word, p, q)
    if w.cuts(q) < w.cuts(p):
        p, q = q, p
    return FactorizationWitness(word, p, q)


def find_double_factorization(code, max_len: int) -> Optional[FactorizationWitness]:
    """Shortest (then lexicographically least) word of length <= max_len with two factorizations.

    ``code`` is a CodeFamily, an ExplicitCodeSet or an iterable of words.
    Ties between parsings of the same word break on cut positions.
    """
    words = _words_of(code, max_len)
    best = _shortest_ambiguity(words, max_len)
    if best is None:
        return None
    cands = [_witness_from(w, p, q) for w, p, q in _ambiguities_of_length(words, best)]
    return min(cands, key=lambda x: (x.word, x.cuts(x.parsing_a), x.cuts(x.parsing_b)))


def _words_of(code, max_len: int) -> list:
    if isinstance(code, CodeFamily):
        ws = enumerate_code_words(code, max_len)
    elif isinstance(code, ExplicitCodeSet):
        ws = code.words
    else:
        ws = {tuple(w) for w in code}
    return sorted((w for w in ws if len(w) <= max_len), key=lambda w: (len(w), w))


def sardinas_patterson(code) -> CodeVerdict:
    """Complete decision of unique decomposition for a finite code."""
    if isinstance(code, CodeFamily):
        if code.explicit is None:
            raise TypeError("sardinas_patterson needs a finite explicit code")
        code = code.explicit
    words = set(code.words) if isinstance(code, ExplicitCodeSet) else {tuple(w) for w in code}

    def quotient(left, right):
        # suffixes x with l x = r, l in left, r in right, x non-empty
        out = set()
        for l in left:
            for r in right:
                if len(l) < len(r) and r[: len(l)] == l:
                    out.add(r[len(l):])
        return out

    current = frozenset(quotient(words, words))
    seen = set()
    level = 1
    while current and current not in seen:
        if current & words:
            longest = max(len(w) for w in words)
            bound = (level + 2) * longest
            wit = None
            for _ in range(8):
                wit = find_double_factorization(words, bound)
                if wit is not None:
                    break
                bound *= 2
            return CodeVerdict(DECOMPOSITION, "fails", witness=wit,
                               reason=f"dangling suffix set {level} meets the code")
        seen.add(current)
        current = frozenset(quotient(current, words) | quotient(words, current))
        level += 1
    return CodeVerdict(DECOMPOSITION, "holds", reason="Sardinas-Patterson")


def _affixes(words: Iterable[Word]):
    prefixes, suffixes = set(), set()
    for w in words:
        for i in range(1, len(w)):
            prefixes.add(w[:i])
            suffixes.add(w[i:])
    return prefixes, suffixes


def _periodic_witness(words: Sequence[Word], max_total: int, budget: int):
    """Concatenation P (|P| <= max_total) whose rotation also factors with other cuts."""
    word_set = set(words)
    longest = max(len(w) for w in words)

    def parse(s):
        # one factorization of s into code words, or None
        best = {0: ()}
        for i in range(1, len(s) + 1):
            for j in range(max(0, i - longest), i):
                if j in best and s[j:i] in word_set:
                    best[i] = best[j] + (s[j:i],)
                    break
        return best.get(len(s))

    states = 0
    by_len = {0: [((), ())]}
    for total in range(1, max_total + 1):
        cur = []
        for c in words:
            for prev, parsing in by_len.get(total - len(c), []):
                cur.append((prev + c, parsing + (c,)))
        states += len(cur)
        if states > budget:
            return None, total - 1
        by_len[total] = cur
        for s, parsing in cur:
            cuts = set()
            pos = 0
            for piece in parsing:
                pos += len(piece)
                cuts.add(pos % total)
            for off in range(1, total):
                if off in cuts:
                    continue
                rot = s[off:] + s[:off]
                q = parse(rot)
                if q is not None:
                    return FactorizationWitness(s, parsing, q, offset=off), total
    return None, max_total


def check_prefix_suffix_disjoint(code: CodeFamily, max_len: int,
                                 budget: int = 200_000) -> CodeVerdict:
    """Decipherability via the proper-prefix / proper-suffix criterion.

    ``certified`` when no enumerated word is both a proper prefix and a proper
    suffix and that is known for all lengths (a builtin pattern proof, or a
    finite code fully inside ``max_len``).  Otherwise a bounded search for a
    finite or periodic bi-parsing over words of length <= 2*max_len.
    """
    words = _words_of(code, max_len)
    prefixes, suffixes = _affixes(words)
    overlap = prefixes & suffixes
    complete = code.finite and code.series.max_length <= max_len
    if not overlap:
        if code.prefix_suffix_pattern or complete:
            why = "no proper prefix is a proper suffix"
            why += " (proved pattern)" if code.prefix_suffix_pattern else " (finite code, complete check)"
            return CodeVerdict(DECIPHERABILITY, "certified", reason=why)
        return CodeVerdict(DECIPHERABILITY, "holds_up_to_bound", bound=max_len,
                           reason="no proper prefix is a proper suffix up to the bound")
    wit = find_double_factorization(words, 2 * max_len)
    if wit is not None:
        return CodeVerdict(DECIPHERABILITY, "fails", witness=wit,
                           reason="finite word with two factorizations")
    wit, reached = _periodic_witness(words, 2 * max_len, budget)
    if wit is not None:
        return CodeVerdict(DECIPHERABILITY, "fails", witness=wit,
                           reason="periodic point with two parsings")
    return CodeVerdict(DECIPHERABILITY, "holds_up_to_bound", bound=reached,
                       reason="prefix/suffix overlap but no bi-parsing found")
