import itertools
import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def factorization_count(word, code):
    """Number of ways to write ``word`` as a concatenation of code words (plain DP)."""
    ways = [0] * (len(word) + 1)
    ways[0] = 1
    for end in range(1, len(word) + 1):
        for c in code:
            k = len(c)
            if k <= end and tuple(word[end - k:end]) == tuple(c):
                ways[end] += ways[end - k]
    return ways[-1]


def brute_ambiguous_words(code, alphabet_size, max_len):
    """All words of length <= max_len with at least two factorizations."""
    out = []
    for n in range(1, max_len + 1):
        for w in itertools.product(range(alphabet_size), repeat=n):
            if factorization_count(w, code) >= 2:
                out.append(w)
    return out


def concatenation_windows(code, n):
    """Length-n windows of concatenations of a finite code (brute force)."""
    longest = max(len(c) for c in code)
    limit = n + 2 * longest
    seen = set()
    frontier = [()]
    while frontier:
        nxt = []
        for s in frontier:
            for c in code:
                t = s + tuple(c)
                if len(t) <= limit:
                    nxt.append(t)
                    for i in range(len(t) - n + 1):
                        seen.add(t[i:i + n])
        frontier = nxt
    return seen


@pytest.fixture
def golden_words():
    return [(0,), (0, 1)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
