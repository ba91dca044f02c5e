"""Brute-force language oracle for coded subshifts and counting-bound checks.

For a code set capped at length ``cap``, every length-n word of the coded
subshift is either a subword of one code word, or reads

    (suffix of a code word) (code word)* (prefix of a code word)

with non-empty end pieces.  The oracle builds the sets ``Q_m`` of length-m
words of the form ``suffix code*`` ending on a code-word boundary by dynamic
programming and glues a prefix onto them.  The result is exactly the length-n
language of the subshift coded by the capped set, which grows with ``cap``
towards the language of the full coded subshift.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .codecheck import sardinas_patterson
from .core import CodeFamily, Factors, enumerate_code_words
from .errors import (
    BudgetExceeded,
    EtaNotAboveOne,
    PreconditionFailed,
    UniqueDecompositionUnknown,
)
from .genfun import eval_f

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV = "CODED_SHIFT_BUDGET"


def state_budget(budget: Optional[int] = None) -> int:
    """Explicit budget, else the environment override, else the default."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _sorted(words) -> tuple:
    return tuple(sorted(words, key=lambda w: (len(w), w)))


@dataclass(frozen=True)
class LanguageSample:
    """Length-n words of the capped coded subshift and of single code words."""

    n: int
    cap: int
    L_n: frozenset
    W_n: frozenset
    P_n: frozenset
    S_n: frozenset

    def counts(self) -> Dict[str, int]:
        return {"L_n": len(self.L_n), "W_n": len(self.W_n),
                "P_n": len(self.P_n), "S_n": len(self.S_n)}

    def to_dict(self, show, counts_only: bool = False) -> dict:
        out = {"n": self.n, "cap": self.cap, "counts": self.counts()}
        if not counts_only:
            for key in ("L_n", "W_n", "P_n", "S_n"):
                out[key] = [show(w) for w in _sorted(getattr(self, key))]
        return out


class LanguageOracle:
    """Shared state for repeated language queries on one family and cap."""

    def __init__(self, code: CodeFamily, cap: int, budget: Optional[int] = None):
        if cap < 1:
            raise ValueError("cap must be >= 1")
        self.code = code
        self.cap = cap
        self.budget = state_budget(budget)
        self.states = 0
        self._factors: Dict[int, Factors] = {}
        self._Q: List[set] = [set()]  # Q[m], m >= 1
        self._short: Dict[int, list] = {}
        self._words_upto = 0
        self._all_words = None

    def _charge(self, k: int):
        self.states += k
        if self.states > self.budget:
            raise BudgetExceeded(self.budget)

    def factors(self, m: int) -> Factors:
        if m not in self._factors:
            if self.code.factors is not None:
                f = self.code.factors(m, self.cap)
            else:
                if self._all_words is None:
                    self._all_words = enumerate_code_words(self.code, self.cap)
                    self._charge(len(self._all_words))
                ws = [w for w in self._all_words if len(w) >= m]
                f = Factors(
                    frozenset(w[:m] for w in ws),
                    frozenset(w[-m:] for w in ws),
                    frozenset(w[i:i + m] for w in ws for i in range(len(w) - m + 1)),
                )
            self._charge(len(f.subwords))
            self._factors[m] = f
        return self._factors[m]

    def words_of_length(self, m: int) -> list:
        """Code words of length exactly m (m <= cap)."""
        if m > self._words_upto:
            reach = min(self.cap, m)
            self._short = {}
            for w in enumerate_code_words(self.code, reach):
                self._short.setdefault(len(w), []).append(w)
            self._words_upto = reach
        return self._short.get(m, [])

    def Q(self, m: int) -> set:
        """Length-m words ``suffix code*`` that end on a code-word boundary."""
        while len(self._Q) <= m:
            k = len(self._Q)
            cur = set(self.factors(k).suffixes)
            for j in range(1, min(k, self.cap + 1)):
                words = self.words_of_length(j)
                if not words:
                    continue
                for q in self._Q[k - j]:
                    for c in words:
                        cur.add(q + c)
            self._charge(len(cur))
            self._Q.append(cur)
        return self._Q[m]

    def sample(self, n: int) -> LanguageSample:
        if n < 1:
            raise ValueError("n must be >= 1")
        f = self.factors(n)
        L = set(f.subwords)
        L |= self.Q(n)
        for m in range(1, n):
            pre = self.factors(n - m).prefixes
            Qm = self.Q(m)
            self._charge(len(Qm) * len(pre))
            for q in Qm:
                for p in pre:
                    L.add(q + p)
        return LanguageSample(n, self.cap, frozenset(L), f.subwords, f.prefixes, f.suffixes)


def sample_language(code: CodeFamily, n: int, cap: int,
                    budget: Optional[int] = None) -> LanguageSample:
    """Length-n language of the subshift coded by the words of length <= cap.

    Raises BudgetExceeded when more than ``budget`` partial words are built
    (default 10**7, overridable through the CODED_SHIFT_BUDGET variable).
    """
    return LanguageOracle(code, cap, budget).sample(n)


def default_cap(code: CodeFamily, n_max: int) -> int:
    if code.finite:
        return code.series.max_length
    return 2 * n_max


@dataclass(frozen=True)
class HLEstimate:
    values: Tuple[Tuple[int, float], ...]
    estimate: float
    window: Tuple[int, int]
    exact: Optional[float] = None
    exact_provenance: Optional[str] = None

    @property
    def error(self) -> Optional[float]:
        if self.exact is None:
            return None
        if math.isinf(self.exact) and self.exact == self.estimate:
            return 0.0
        return abs(self.estimate - self.exact)

    def to_dict(self) -> dict:
        return {
            "values": [[n, v] for n, v in self.values],
            "estimate": self.estimate,
            "window": list(self.window),
            "exact": self.exact,
            "exact_provenance": self.exact_provenance,
            "error": self.error,
        }


def estimate_hL(code: CodeFamily, n_max: int, cap: Optional[int] = None,
                budget: Optional[int] = None) -> HLEstimate:
    """Estimate the entropy of the limit subshift from subword counts.

    ``ln|W_n|`` is subadditive in n, so ``ln|W_n|/n`` tends to its infimum;
    the estimate is the smallest value over the window ``[n_max/2, n_max]``.
    """
    cap = default_cap(code, n_max) if cap is None else cap
    oracle = LanguageOracle(code, cap, budget)
    values = []
    for n in range(1, n_max + 1):
        w = len(oracle.factors(n).subwords)
        values.append((n, math.log(w) / n if w else -math.inf))
    lo = max(1, (n_max + 1) // 2)
    estimate = min(v for n, v in values if n >= lo)
    exact = code.exact_hL
    return HLEstimate(
        tuple(values), estimate, (lo, n_max),
        exact.value if exact else None,
        exact.provenance if exact else None,
    )


# -- counting inequalities -------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """Outcome of a per-n (or per-k) counting inequality check."""

    which: str
    params: dict
    rows: Tuple[dict, ...]
    passed: bool
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"which": self.which, "params": self.params, "rows": list(self.rows),
                "passed": self.passed, "notes": list(self.notes)}


def verify_wordcount(code: CodeFamily, h: float, n_max: int, cap: Optional[int] = None,
                     budget: Optional[int] = None, rtol: float = 1e-12) -> BoundReport:
    """Check ``|L_n| >= e^{n h}`` for n <= n_max on the oracle language.

    The oracle under-approximates the language, so a failure at a large cap
    means ``h`` is too large.
    """
    cap = default_cap(code, n_max) if cap is None else cap
    oracle = LanguageOracle(code, cap, budget)
    rows = []
    for n in range(1, n_max + 1):
        size = len(oracle.sample(n).L_n)
        log_size = math.log(size) if size else -math.inf
        margin = log_size - n * h
        ok = margin >= -rtol * max(1.0, abs(n * h))
        rows.append({"n": n, "L_n": size, "bound": math.exp(n * h), "log_margin": margin, "ok": ok})
    return BoundReport("wordcount", {"h": h, "n_max": n_max, "cap": cap}, tuple(rows),
                       all(r["ok"] for r in rows))


def _certified_f_upper(code: CodeFamily, alpha: float, trunc: int, max_trunc: int = 1 << 14):
    v = eval_f(code.series, alpha, trunc)
    while v.upper >= 1 and not code.finite and trunc < max_trunc:
        trunc *= 2
        v = eval_f(code.series, alpha, trunc)
    return v


def verify_aux1_bound(code: CodeFamily, alpha: float, M: Optional[float] = None,
                      n_max: int = 10, cap: Optional[int] = None,
                      budget: Optional[int] = None, trunc: int = 200) -> BoundReport:
    """Check ``|L_n| < e^{n alpha} (M + n M^2 / (1 - f(alpha)))`` for n <= n_max.

    Requires a certified ``f(alpha) < 1`` and a constant M with
    ``|P_n|, |S_n|, |W_n| < M e^{n alpha}`` on the sampled range; M defaults to
    the sampled maximum of those ratios plus one.
    """
    fval = _certified_f_upper(code, alpha, trunc)
    if not fval.upper < 1:
        raise PreconditionFailed(f"f({alpha}) is not certified below 1: {fval}")
    cap = default_cap(code, n_max) if cap is None else cap
    oracle = LanguageOracle(code, cap, budget)
    samples = [oracle.sample(n) for n in range(1, n_max + 1)]
    ratio = max(
        max(len(s.P_n), len(s.S_n), len(s.W_n)) * math.exp(-s.n * alpha) for s in samples
    )
    notes = []
    if M is None:
        M = ratio + 1.0
        notes.append("M = sampled max of |P_n|,|S_n|,|W_n| e^{-n alpha} + 1")
    elif not ratio < M:
        raise PreconditionFailed(f"M = {M} too small: sampled ratio reaches {ratio}")
    rows = []
    for s in samples:
        size = len(s.L_n)
        rhs = math.exp(s.n * alpha) * (M + s.n * M * M / (1 - fval.upper))
        rows.append({"n": s.n, "L_n": size, "rhs": rhs, "ok": size < rhs})
    params = {"alpha": alpha, "M": M, "n_max": n_max, "cap": cap, "f_upper": fval.upper}
    return BoundReport("aux1", params, tuple(rows), all(r["ok"] for r in rows), tuple(notes))


def _require_unique_decomposition(code: CodeFamily) -> str:
    flag = code.flag("unique_decomposition")
    if flag.value is True:
        return flag.provenance
    if flag.value is None and code.explicit is not None:
        verdict = sardinas_patterson(code.explicit)
        if verdict.positive:
            return "decided"
        raise PreconditionFailed("code does not have unique decomposition")
    if flag.value is False:
        raise PreconditionFailed("code does not have unique decomposition")
    raise UniqueDecompositionUnknown(f"unique decomposition of {code.name!r} is not established")


def composition_counts(counts: List[int], t: int, k_max: int) -> List[Dict[int, int]]:
    """``D[k][N]`` = sum over compositions N = n_1 + .. + n_k, n_i <= t, of prod counts[n_i]."""
    D = [{0: 1}]
    for _ in range(k_max):
        prev, cur = D[-1], {}
        for N, v in prev.items():
            for j in range(1, t + 1):
                c = counts[j]
                if c:
                    cur[N + j] = cur.get(N + j, 0) + v * c
        D.append(cur)
    return D


def verify_aux2_growth(code: CodeFamily, alpha: float, t: int, k_max: int,
                       oracle_n_max: int = 0, budget: Optional[int] = None,
                       rtol: float = 1e-12) -> BoundReport:
    """Check the concatenation lower bound ``D_k(N_k) >= e^{N_k alpha} eta^k / (t k)``.

    ``eta`` is f(alpha) truncated to code words of length <= t and ``D_k(N)``
    counts k-fold concatenations of such words of total length N, exactly.
    ``N_k`` maximises ``D_k(N) e^{-N alpha}``; since those terms sum to
    ``eta^k`` over at most ``k(t-1)+1`` values of N the bound follows.
    With ``oracle_n_max > 0`` it also checks ``D_k(N_k) <= |L_{N_k}|`` for
    ``N_k <= oracle_n_max``, which needs unique decomposition.
    """
    if t < 1 or k_max < 1:
        raise ValueError("t and k_max must be >= 1")
    counts = [0] + [code.series.count(j) for j in range(1, t + 1)]
    eta = math.fsum(c * math.exp(-j * alpha) for j, c in enumerate(counts) if c)
    if not eta > 1:
        raise EtaNotAboveOne(f"eta = {eta!r} <= 1 at alpha = {alpha}, t = {t}")
    provenance = _require_unique_decomposition(code)
    D = composition_counts(counts, t, k_max)
    oracle = LanguageOracle(code, t, budget) if oracle_n_max else None
    rows = []
    for k in range(1, k_max + 1):
        logs = {N: math.log(v) - N * alpha for N, v in D[k].items()}
        N = max(sorted(logs), key=lambda x: logs[x])
        lhs = logs[N]
        rhs = k * math.log(eta) - math.log(t * k)
        ok = lhs >= rhs - rtol * max(1.0, abs(rhs))
        row = {"k": k, "N": N, "D": D[k][N], "log_lhs": lhs + N * alpha,
               "log_rhs": rhs + N * alpha, "ok": ok}
        if oracle is not None and N <= oracle_n_max:
            size = len(oracle.sample(N).L_n)
            row["L_N"] = size
            row["ok"] = ok and D[k][N] <= size
        rows.append(row)
    params = {"alpha": alpha, "t": t, "k_max": k_max, "eta": eta,
              "unique_decomposition": provenance}
    return BoundReport("aux2", params, tuple(rows), all(r["ok"] for r in rows))
