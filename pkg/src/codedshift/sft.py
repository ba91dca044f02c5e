"""Entropy of nearest-neighbour shifts of finite type by the loop method.

Fix a letter ``a``.  ``T_i`` counts words of length ``i + 2`` that begin and
end with ``a`` and avoid ``a`` inside.  The words ``a u`` (``a u a`` allowed,
``u`` free of ``a``) form a code whose coded subshift is the SFT, with
``|C_n| = T_{n-1}``; the entropy is ``ln x`` for the root of

    sum_i T_i / x^(i+1) = 1.

The Perron eigenvalue of the adjacency matrix gives an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .core import CERTIFIED, Alphabet, CodeFamily, ExactValue, Flag
from .errors import NotIrreducible
from .genfun import EPS, CountSeries, GrowthCertificate, RootResult, solve_f_equals_one


def _reachability(A: np.ndarray) -> np.ndarray:
    """R[i, j]: a path of length >= 1 leads from i to j."""
    R = A.astype(bool)
    while True:
        nxt = R | ((R.astype(np.int64) @ R.astype(np.int64)) > 0)
        if (nxt == R).all():
            return R
        R = nxt


def is_irreducible(A: np.ndarray) -> bool:
    return bool(len(A)) and bool(_reachability(A).all())


@dataclass(frozen=True, eq=False)
class SftSpec:
    """Nearest-neighbour SFT: ``allowed[x, y]`` says whether ``xy`` may occur."""

    alphabet: Alphabet
    allowed: np.ndarray
    distinguished: int = 0

    def __post_init__(self):
        A = np.asarray(self.allowed, dtype=bool)
        k = len(self.alphabet)
        if A.shape != (k, k):
            raise ValueError(f"adjacency must be {k}x{k}, got {A.shape}")
        if not 0 <= self.distinguished < k:
            raise ValueError("distinguished letter out of range")
        A.setflags(write=False)
        object.__setattr__(self, "allowed", A)
        if not is_irreducible(A):
            raise NotIrreducible("adjacency graph is not strongly connected")

    @classmethod
    def from_forbidden(cls, letters: Sequence[str], forbidden: Sequence[Tuple[str, str]],
                       distinguished: int = 0) -> "SftSpec":
        alphabet = Alphabet(tuple(letters))
        A = np.ones((len(alphabet), len(alphabet)), dtype=bool)
        for x, y in forbidden:
            A[alphabet.index(x), alphabet.index(y)] = False
        return cls(alphabet, A, distinguished)

    def with_letter(self, a: int) -> "SftSpec":
        return SftSpec(self.alphabet, self.allowed, a)

    @property
    def others(self) -> List[int]:
        return [i for i in range(len(self.alphabet)) if i != self.distinguished]


# -- spectral radius ---------------------------------------------------------------


def spectral_bounds(M: np.ndarray, tol: float = 1e-12, max_squarings: int = 64):
    """Collatz-Wielandt bracket ``(lower, upper)`` on the Perron root of an irreducible M.

    Iterates on ``M + I`` (aperiodic, same Perron vector) from the all-ones
    vector, squaring the normalised matrix so that k steps reach ``2**k``
    powers.
    """
    n = len(M)
    B = M.astype(float) + np.eye(n)
    P = B / np.abs(B).sum(axis=1).max()
    x = np.ones(n)
    lower = upper = None
    for _ in range(max_squarings):
        y = B @ x
        ratios = y / x
        lower, upper = ratios.min() - 1, ratios.max() - 1
        if upper - lower <= tol * max(1.0, upper):
            break
        x = P @ x
        x = x / x.max()
        if (x <= 0).any():
            x = np.maximum(x, np.finfo(float).tiny)
        P = P @ P
        P = P / P.max()
    # rounding in B @ x is at most n*eps relative
    pad = 2 * n * EPS
    return max(0.0, lower * (1 - pad) - pad), upper * (1 + pad) + pad


def perron_entropy(sft: SftSpec, tol: float = 1e-12) -> float:
    """ln of the spectral radius of the adjacency matrix."""
    lo, hi = spectral_bounds(sft.allowed, tol)
    return math.log(0.5 * (lo + hi))


def _cyclic_blocks(A: np.ndarray) -> List[List[int]]:
    """Strongly connected components of A that carry a cycle."""
    if not len(A):
        return []
    R = _reachability(A)
    seen, blocks = set(), []
    for i in range(len(A)):
        if i in seen or not R[i, i]:
            continue
        comp = [j for j in range(len(A)) if R[i, j] and R[j, i]]
        seen.update(comp)
        blocks.append(comp)
    return blocks


def restricted_radius(sft: SftSpec) -> Tuple[float, float]:
    """Bracket on the spectral radius of the adjacency with the distinguished letter removed."""
    idx = sft.others
    B = sft.allowed[np.ix_(idx, idx)]
    best = (0.0, 0.0)
    for comp in _cyclic_blocks(B):
        lo, hi = spectral_bounds(B[np.ix_(comp, comp)])
        best = (max(best[0], lo), max(best[1], hi))
    return best


def restricted_entropy(sft: SftSpec) -> float:
    """Entropy of the subshift of points avoiding the distinguished letter (-inf if empty)."""
    idx = sft.others
    B = sft.allowed[np.ix_(idx, idx)]
    if not _cyclic_blocks(B):
        return -math.inf
    lo, hi = restricted_radius(sft)
    return math.log(0.5 * (lo + hi))


# -- first returns -------------------------------------------------------------------


@dataclass(eq=False)
class LoopSpectrum:
    """First-return counts ``T_i`` at the distinguished letter.

    ``T`` holds ``T_0..T_{i_max}``; :meth:`count` extends a private table on
    demand so that the series can be summed past ``i_max``.
    """

    sft: SftSpec
    T: Tuple[int, ...]
    certificate: Optional[GrowthCertificate]
    max_index: Optional[int]  # T_i = 0 beyond this (acyclic remainder)
    _table: list = field(default_factory=list, repr=False)
    _vec: list = field(default_factory=list, repr=False)

    @property
    def i_max(self) -> int:
        return len(self.T) - 1

    def _extend(self, i_max: int) -> None:
        if len(self._table) > i_max:
            return
        i_max = max(i_max, 2 * len(self._table), 64)  # extend in chunks
        s = self.sft
        a, idx = s.distinguished, s.others
        if not self._table:
            self._table.append(int(s.allowed[a, a]))
        if not idx:
            self._table.extend([0] * (i_max + 1 - len(self._table)))
            return
        A = s.allowed.astype(object)
        B = A[np.ix_(idx, idx)]
        back = A[idx, a]
        # T_i = u B^(i-1) w with u the row out of a, w the column into a
        v = self._vec[0] if self._vec else None
        while len(self._table) <= i_max:
            v = A[a, idx].copy() if v is None else v.dot(B)
            self._table.append(int(v.dot(back)))
        self._vec[:] = [v]

    def count(self, n: int) -> int:
        """|C_n| = T_{n-1}."""
        if n < 1:
            return 0
        if self.max_index is not None and n - 1 > self.max_index:
            return 0
        self._extend(n - 1)
        return self._table[n - 1]

    def series(self) -> CountSeries:
        if self.max_index is not None:
            counts = {i + 1: self.count(i + 1) for i in range(self.max_index + 1)}
            counts = {n: c for n, c in counts.items() if c}
            return CountSeries(count=lambda n: counts.get(n, 0),
                               max_length=max(counts) if counts else 1, name="loop code")
        return CountSeries(count=self.count, certificates=(self.certificate,), name="loop code")

    def to_dict(self) -> dict:
        out = {"T": list(self.T), "i_max": self.i_max}
        if self.certificate is not None:
            out["certificate"] = {"M": self.certificate.M, "beta": self.certificate.beta}
        return out


def _loop_certificate(sft: SftSpec) -> Optional[GrowthCertificate]:
    """``T_i <= M lam^i`` from a Collatz-Wielandt vector of the remainder matrix."""
    a, idx = sft.distinguished, sft.others
    B = sft.allowed[np.ix_(idx, idx)].astype(float)
    n = len(idx)
    # near-Perron positive vector of B + delta J
    x = np.ones(n)
    C = B + 1e-9 + np.eye(n)
    for _ in range(2000):
        y = C @ x
        y = y / y.max()
        if np.allclose(y, x, rtol=1e-13, atol=0):
            x = y
            break
        x = y
    lam = float((B @ x / x).max()) * (1 + 4 * n * EPS)
    if lam <= 0:
        return None
    u = sft.allowed[a, idx].astype(float)
    w = sft.allowed[idx, a].astype(float)
    # T_i = u B^(i-1) w <= K lam^(i-1) for i >= 1, and T_0 <= 1, so
    # |C_n| = T_{n-1} <= max(K / lam^2, 1 / lam) lam^n
    K = float((w / x).max()) * float(u @ x) * (1 + 4 * n * EPS)
    return GrowthCertificate(max(K / lam ** 2, 1.0 / lam), math.log(lam), 0.0, "spectral-bound")


def first_return_counts(sft: SftSpec, i_max: int) -> LoopSpectrum:
    """Exact ``T_0..T_{i_max}`` by dynamic programming over paths avoiding the letter."""
    if not isinstance(sft, SftSpec):
        raise TypeError("expected an SftSpec")
    idx = sft.others
    B = sft.allowed[np.ix_(idx, idx)]
    cyclic = bool(_cyclic_blocks(B))
    spec = LoopSpectrum(sft, (), _loop_certificate(sft) if cyclic else None,
                        None if cyclic else len(idx))
    # paths inside an acyclic remainder have at most len(idx) vertices
    spec.T = tuple(spec.count(i + 1) for i in range(i_max + 1))
    return spec


def loop_entropy(spectrum: LoopSpectrum, tol: float = 1e-11) -> Tuple[float, float, RootResult]:
    """``(h, x, root)``: entropy ``h = ln x`` from the first-return series."""
    root = solve_f_equals_one(spectrum.series(), tol=tol)
    return root.root, math.exp(root.root), root


def loop_code_family(sft: SftSpec) -> CodeFamily:
    """The code ``{a u : a u a allowed, u avoids a}`` with ``|C_n| = T_{n-1}``."""
    spectrum = first_return_counts(sft, 0)
    series = spectrum.series()
    a, A = sft.distinguished, sft.allowed
    k = len(sft.alphabet)

    def enumerator(cap):
        out = []

        def walk(word):
            last = word[-1]
            if A[last, a]:
                out.append(word)
            if len(word) < cap:
                for y in range(k):
                    if y != a and A[last, y]:
                        walk(word + (y,))

        if cap >= 1:
            walk((a,))
        return out

    h_rest = restricted_entropy(sft)
    return CodeFamily(
        name="loop_code",
        alphabet=sft.alphabet,
        series=series,
        enumerator=enumerator,
        flags={
            # every code word starts with a, no proper suffix does
            "unique_decipherability": Flag(True, CERTIFIED),
            "unique_decomposition": Flag(True, CERTIFIED),
        },
        exact_hL=ExactValue(h_rest, "ln spectral radius without the letter", "exact-spectral"),
        prefix_suffix_pattern=True,
    )


def random_irreducible_sft(k: int, rng: np.random.Generator, density: float = 0.6,
                           max_tries: int = 1000) -> SftSpec:
    """Random irreducible adjacency on k letters (rejection sampling)."""
    for _ in range(max_tries):
        A = rng.random((k, k)) < density
        if is_irreducible(A):
            return SftSpec(Alphabet.of_size(k), A, 0)
    raise NotIrreducible(f"no irreducible sample after {max_tries} tries")
