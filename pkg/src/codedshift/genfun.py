"""Generating function of a code-word count sequence.

``f(alpha) = sum_j count(j) * exp(-j * alpha)``

Every evaluation returns a :class:`BoundedValue` enclosing the true value of
the series at the given ``alpha``: the lower end is a padded partial sum, the
upper end adds a tail bound derived from a growth certificate.  Divergence is
encoded as ``upper = inf`` and never raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import CertificateViolation, NoBracket, TailUnbounded

EPS = np.finfo(float).eps
INF = math.inf

# Relative slack on tail bounds.  Keeps the upper end non-increasing in the
# truncation even when a certificate is tight term by term.
_TAIL_SLACK = 1e-6
# Exponents above this are clipped (the lower end stays valid, upper -> inf).
_MAX_EXP = 700.0
CERTIFICATE_CHECK_RANGE = 200
# f(hi) this far below 1 after bisection means a discontinuity, not a root.
_JUMP = 1e-4


@dataclass(frozen=True)
class BoundedValue:
    lower: float
    upper: float

    def __post_init__(self):
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise ValueError("NaN bound")
        if self.lower > self.upper:
            raise ValueError(f"inverted interval [{self.lower}, {self.upper}]")

    @classmethod
    def point(cls, x: float) -> "BoundedValue":
        return cls(x, x)

    @property
    def width(self) -> float:
        if self.lower == self.upper:
            return 0.0
        return self.upper - self.lower

    @property
    def divergent(self) -> bool:
        """Upper end is +inf: the series diverges or no tail bound exists."""
        return self.upper == INF

    @property
    def midpoint(self) -> float:
        if math.isinf(self.upper) or math.isinf(self.lower):
            return self.lower if math.isinf(self.upper) else self.upper
        return 0.5 * (self.lower + self.upper)

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= x <= self.upper + tol

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper}


@dataclass(frozen=True)
class GrowthCertificate:
    """Claim that ``count(j) <= M * exp(j*beta) * j**(-power)`` for every j >= 1."""

    M: float
    beta: float
    power: float = 0.0
    provenance: str = "user-asserted"

    def __post_init__(self):
        if not self.M > 0:
            raise ValueError("certificate constant M must be positive")
        if self.power < 0:
            raise ValueError("certificate power must be non-negative")

    def log_bound(self, j: int) -> float:
        return math.log(self.M) + j * self.beta - self.power * math.log(j)

    def tail(self, alpha: float, trunc: int, weight: int = 0) -> float:
        """Bound on ``sum_{j > trunc} j**weight * count(j) * exp(-j*alpha)``."""
        delta = alpha - self.beta
        m = trunc + 1
        # exponent of j left after the certificate's decay factor
        p = self.power - weight
        best = INF
        if delta > 0:
            q = math.exp(-delta)
            one_minus_q = -math.expm1(-delta)
            if p >= 0:
                # j**(-p) <= m**(-p) for j >= m
                best = min(best, self.M * m ** (-p) * math.exp(-delta * m) / one_minus_q)
            else:
                # weight 1 with power < 1: j**(1-power) <= j * m**(-power)
                s = q ** m * (m - (m - 1) * q) / one_minus_q ** 2 if q > 0 else 0.0
                best = min(best, self.M * m ** (-self.power) * s)
        if delta >= 0 and p > 1:
            # integral comparison, sum_{j>T} j**(-p) <= T**(1-p)/(p-1)
            decay = math.exp(-delta * m) if delta > 0 else 1.0
            best = min(best, self.M * decay * trunc ** (1 - p) / (p - 1))
        return best


@dataclass(frozen=True, eq=False)
class CountSeries:
    """Exact code-word counts ``n -> |C_n|`` with optional growth certificates.

    ``log_count`` is an optional fast path returning ``ln count(n)`` as a float
    (or ``-inf`` for zero); it must agree with ``count``.
    """

    count: Callable[[int], int]
    certificates: tuple = ()
    max_length: Optional[int] = None
    log_count: Optional[Callable[[int], float]] = None
    name: str = ""
    _logc: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.certificates, GrowthCertificate):
            object.__setattr__(self, "certificates", (self.certificates,))
        else:
            object.__setattr__(self, "certificates", tuple(self.certificates))
        self._check_certificates()

    def _check_certificates(self):
        hi = CERTIFICATE_CHECK_RANGE
        if self.max_length is not None:
            hi = min(hi, self.max_length)
        for cert in self.certificates:
            for j in range(1, hi + 1):
                c = self.count(j)
                if c < 0:
                    raise CertificateViolation(f"negative count at length {j}")
                if c == 0:
                    continue
                bound = cert.log_bound(j)
                if math.log(c) > bound + 1e-9 * max(1.0, abs(bound)):
                    raise CertificateViolation(
                        f"count({j}) = {c} exceeds certificate "
                        f"M={cert.M}, beta={cert.beta}, power={cert.power}"
                    )

    @property
    def finite(self) -> bool:
        return self.max_length is not None

    def log_counts(self, upto: int) -> np.ndarray:
        """Array of ``ln count(j)`` for j = 1..upto (``-inf`` where zero)."""
        cache = self._logc
        for j in range(len(cache) + 1, upto + 1):
            if self.max_length is not None and j > self.max_length:
                cache.append(-INF)
            elif self.log_count is not None:
                cache.append(float(self.log_count(j)))
            else:
                c = self.count(j)
                cache.append(math.log(c) if c > 0 else -INF)
        return np.asarray(cache[:upto], dtype=float)

    def tail(self, alpha: float, trunc: int, weight: int = 0) -> float:
        if self.max_length is not None and trunc >= self.max_length:
            return 0.0
        best = INF
        for cert in self.certificates:
            best = min(best, cert.tail(alpha, trunc, weight))
        return best


def finite_series(counts: dict, name: str = "") -> CountSeries:
    """Series for a finite code given ``{length: count}``."""
    counts = {int(k): int(v) for k, v in counts.items() if v}
    top = max(counts) if counts else 0
    return CountSeries(count=lambda n: counts.get(n, 0), max_length=top, name=name)


def _term_arrays(series: CountSeries, alpha: float, trunc: int, weight: int):
    """Padded lower/upper term arrays for the partial sum up to ``trunc``."""
    j = np.arange(1, trunc + 1, dtype=float)
    if alpha == 0:
        counts = np.array([float(series.count(int(k))) for k in j])
        exact = np.array([series.count(int(k)) < 2 ** 53 for k in j])
        t = counts * j if weight else counts
        r = np.where(exact, 0.0, 2 * EPS)
        return t * (1 - r), t * (1 + r), False
    logc = series.log_counts(trunc)
    mask = np.isfinite(logc)
    if not mask.any():
        return np.zeros(0), np.zeros(0), False
    logc = logc[mask]
    j = j[mask]
    e = logc - j * alpha
    clipped = bool((e > _MAX_EXP).any())
    t = np.exp(np.minimum(e, _MAX_EXP))
    # error model: ln count and j*alpha are each off by a few ulps
    r = (np.abs(logc) + j * abs(alpha)) * 4 * EPS + 4 * EPS
    if weight:
        t = t * j
        r = r + 2 * EPS
    return t * (1 - r), t * (1 + r), clipped


def _evaluate(series: CountSeries, alpha: float, trunc: int, weight: int) -> BoundedValue:
    if trunc < 1:
        raise ValueError("trunc must be >= 1")
    alpha = float(alpha)
    if series.max_length is not None:
        trunc_eff = min(trunc, series.max_length)
    else:
        trunc_eff = trunc
    lo_terms, hi_terms, clipped = _term_arrays(series, alpha, trunc_eff, weight)
    lower = math.fsum(lo_terms)
    if clipped:
        return BoundedValue(lower, INF)
    tail = series.tail(alpha, trunc, weight)
    if math.isinf(tail):
        return BoundedValue(lower, INF)
    upper = math.fsum(list(hi_terms) + [tail * (1 + _TAIL_SLACK)])
    return BoundedValue(lower, max(lower, upper))


def eval_f(series: CountSeries, alpha: float, trunc: int) -> BoundedValue:
    """Enclosure of ``sum_j count(j) e^{-j alpha}`` from ``trunc`` terms plus a tail bound."""
    return _evaluate(series, alpha, trunc, 0)


def eval_moment(series: CountSeries, alpha: float, trunc: int) -> BoundedValue:
    """Enclosure of the first moment ``sum_j j count(j) e^{-j alpha}``."""
    return _evaluate(series, alpha, trunc, 1)


def rational_partial_sums(series: CountSeries, base: int, truncs: Sequence[int]) -> list:
    """Exact partial sums ``sum_{j<=T} count(j) / base**j`` as Fractions.

    This is ``f(ln base)`` truncated at each requested ``T``, with no rounding.
    """
    wanted = sorted(set(int(t) for t in truncs))
    out = {}
    acc = 0
    for j in range(1, wanted[-1] + 1):
        acc = acc * base + series.count(j)
        if j in wanted:
            out[j] = Fraction(acc, base ** j)
    return [out[int(t)] for t in truncs]


def abscissa(series: CountSeries, N: int = 2000) -> BoundedValue:
    """Bracket the exponential growth rate ``limsup ln count(n) / n``.

    The lower end is the largest sampled ``ln count(n)/n`` for n <= N (a sampled
    estimate, capped by the certified upper end); the upper end is the smallest
    certificate rate, or +inf without a certificate.  Finite families have rate
    ``-inf`` and the series converges everywhere.
    """
    if series.finite:
        return BoundedValue(-INF, -INF)
    logc = series.log_counts(N)
    n = np.arange(1, N + 1, dtype=float)
    mask = np.isfinite(logc)
    lower = float((logc[mask] / n[mask]).max()) if mask.any() else -INF
    upper = min((c.beta for c in series.certificates), default=INF)
    return BoundedValue(min(lower, upper), upper)


@dataclass(frozen=True)
class RootResult:
    root: float
    enclosure: BoundedValue
    residual: BoundedValue
    trunc: int

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "lower": self.enclosure.lower,
            "upper": self.enclosure.upper,
            "residual": self.residual.to_dict(),
            "trunc": self.trunc,
        }


class _Classifier:
    """Certified comparison of f(alpha) against 1 with a growing truncation."""

    def __init__(self, series, trunc, max_trunc):
        self.series = series
        self.trunc = series.max_length if series.finite else trunc
        self.max_trunc = max(max_trunc, self.trunc)

    def value(self, alpha):
        return eval_f(self.series, alpha, self.trunc)

    def __call__(self, alpha) -> int:
        while True:
            v = self.value(alpha)
            if v.lower > 1:
                return 1
            if v.upper < 1:
                return -1
            if self.series.finite or self.trunc >= self.max_trunc:
                return 0
            self.trunc = min(2 * self.trunc, self.max_trunc)


def upper_bracket(series: CountSeries, trunc: int = 64, max_trunc: int = 1 << 16,
                  _cls: Optional[_Classifier] = None) -> float:
    """Smallest probed alpha (doubling steps) with f(alpha) certified below 1."""
    cls = _cls or _Classifier(series, trunc, max_trunc)
    start = abscissa(series).upper
    hi = (start if math.isfinite(start) else 0.0) + 1.0
    step = 1.0
    for _ in range(64):
        if cls(hi) < 0:
            return hi
        hi += step
        step *= 2
    raise TailUnbounded("no alpha with a certified f(alpha) < 1; missing growth certificate?")


def solve_f_equals_one(series: CountSeries, bracket_hint: Optional[tuple] = None, *,
                       trunc: int = 64, max_trunc: int = 1 << 16,
                       tol: float = 1e-10) -> RootResult:
    """Solve ``f(x) = 1`` by bisection with interval-certified comparisons.

    Raises NoBracket when f does not exceed 1 above the abscissa, TailUnbounded
    when no certified upper bracket exists.
    """
    cls = _Classifier(series, trunc, max_trunc)
    if bracket_hint is not None:
        lo, hi = map(float, bracket_hint)
        if cls(lo) <= 0 or cls(hi) >= 0:
            raise NoBracket(f"hint {bracket_hint} does not bracket f = 1")
    else:
        hi = upper_bracket(series, _cls=cls)
        if series.finite:
            lo, step = hi - 1.0, 1.0
            for _ in range(64):
                if cls(lo) > 0:
                    break
                lo -= step
                step *= 2
            else:
                raise NoBracket("f never exceeds 1")
        else:
            a = abscissa(series).lower
            if not math.isfinite(a):
                raise NoBracket("no nonzero counts sampled")
            lo = a + 1e-6
            if lo >= hi or cls(lo) <= 0:
                raise NoBracket("f does not exceed 1 above the abscissa")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        c = cls(mid)
        if c > 0:
            lo = mid
        elif c < 0:
            hi = mid
        else:
            # f(mid) straddles 1: close in from both sides if the neighbours are certified
            d = 0.25 * tol
            if cls(mid - d) > 0:
                lo = mid - d
            if cls(mid + d) < 0:
                hi = mid + d
            break
    root = 0.5 * (lo + hi)
    residual = cls.value(root)
    if hi - lo <= 2 * tol and cls.value(hi).upper < 1 - _JUMP:
        # bisection collapsed onto the abscissa, where f jumps from +inf past 1
        raise NoBracket("f jumps over 1 at the abscissa; no root of f = 1")
    return RootResult(root, BoundedValue(lo, hi), residual, cls.trunc)


def refine(series: CountSeries, alpha: float, trunc: int, tol: float,
           max_trunc: int = 1 << 15, weight: int = 0, stop=None):
    """Evaluate with doubling truncation until the width is <= tol.

    ``stop(value)`` may end the refinement early (for example once the value
    is certified on one side of 1).  Returns ``(BoundedValue, trunc_used)``.
    """
    if series.finite:
        trunc = max(trunc, series.max_length)
    while True:
        v = _evaluate(series, alpha, trunc, weight)
        if v.width <= tol or (stop is not None and stop(v)):
            return v, trunc
        if series.finite or trunc >= max_trunc:
            return v, trunc
        trunc = min(2 * trunc, max_trunc)


def threshold_crossing(series: CountSeries, alpha: float, threshold: float,
                       upto: int, weight: int = 1) -> Optional[int]:
    """First n whose certified lower partial sum exceeds ``threshold``, or None."""
    lo_terms, _, _ = _term_arrays(series, alpha, upto, weight)
    if len(lo_terms) == upto:
        idx = np.arange(1, upto + 1)
    else:
        idx = np.nonzero(np.isfinite(series.log_counts(upto)))[0] + 1
    if len(idx) == 0:
        return None
    partial = np.cumsum(lo_terms)
    # cumulative rounding of a positive sum stays below n * eps relative
    partial = partial * (1 - (np.arange(1, len(partial) + 1) + 1) * EPS)
    hit = np.nonzero(partial > threshold)[0]
    return int(idx[hit[0]]) if len(hit) else None
