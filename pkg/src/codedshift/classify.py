"""Entropy of a coded subshift from its generating function.

The value of ``f`` at the entropy ``hL`` of the limit subshift decides
everything:

* ``f(hL) < 1``: the entropy of X equals hL and every measure of maximal
  entropy lives on the limit subshift;
* ``f(hL) = 1``: the entropy still equals hL, and whether a measure of
  maximal entropy lives off the limit subshift is a recurrence question;
* ``f(hL) > 1`` with unique decomposition: the entropy is the root of
  ``f(x) = 1`` and the measure of maximal entropy is unique.

The loop graph (one vertex, one loop of length n per code word of length n)
is classified as transient, null recurrent or positive recurrent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .codecheck import check_prefix_suffix_disjoint, sardinas_patterson
from .core import CodeFamily, Flag
from .errors import NoBracket, RegimeMismatch, TailUnbounded
from .genfun import (
    INF,
    BoundedValue,
    CountSeries,
    abscissa,
    refine,
    solve_f_equals_one,
    threshold_crossing,
    upper_bracket,
)
from .language import estimate_hL

BELOW, EQUAL, ABOVE, UNDETERMINED = "below_one", "equal_one", "above_one", "undetermined"
TRANSIENT, NULL, POSITIVE = "transient", "null_recurrent", "positive_recurrent"

MME_IN_L = "all_mme_supported_in_L"
MME_UNIQUE = "unique_mme"
MME_RECURRENCE = "mme_beyond_L_iff_positive_recurrent"
MME_OPEN = "mme_beyond_L_not_determined"
MME_UNAVAILABLE = "conclusion_unavailable"
MME_UNDETERMINED = "undetermined"

_CITED = {
    MME_IN_L: "every measure of maximal entropy is supported on the limit subshift",
    MME_UNIQUE: "unique measure of maximal entropy (cited: it is fully supported and Bernoulli-like)",
    MME_RECURRENCE: "a measure of maximal entropy off the limit subshift exists iff the loop graph is positive recurrent",
    MME_OPEN: "a measure of maximal entropy off the limit subshift may or may not exist",
    MME_UNAVAILABLE: "unique decomposition not established; the root-of-f conclusion is withheld",
    MME_UNDETERMINED: "f(hL) not separated from 1",
}


@dataclass
class AnalyzeConfig:
    """Truncation and tolerance settings for :func:`analyze`.

    trunc : int
        Starting truncation; doubled until the f(hL) interval is narrower than
        ``tol`` or ``max_trunc`` is reached.
    """

    trunc: int = 120
    tol: float = 1e-10
    max_trunc: int = 1 << 15
    root_tol: float = 1e-10
    divergence_threshold: float = 10.0
    moment_max_trunc: int = 32768
    hl_exact: Optional[float] = None
    hl_estimate_nmax: Optional[int] = None
    max_len: int = 12


@dataclass(frozen=True)
class GraphClass:
    cls: str
    series_value: BoundedValue
    moment_value: Optional[BoundedValue]
    hG: float
    divergence_threshold_hit: Optional[Tuple[float, int]] = None
    trunc: int = 0

    def to_dict(self) -> dict:
        out = {
            "class": self.cls,
            "hG": self.hG,
            "series_value": self.series_value.to_dict(),
            "moment_value": self.moment_value.to_dict() if self.moment_value else None,
            "trunc": self.trunc,
        }
        if self.divergence_threshold_hit is not None:
            t, n = self.divergence_threshold_hit
            out["divergence_threshold_hit"] = {"threshold": t, "n_reached": n}
        return out


@dataclass(frozen=True)
class EntropyReport:
    hL: float
    hL_provenance: str
    f_at_hL: BoundedValue
    regime: str
    hX: BoundedValue
    hX_provenance: str
    hG: Optional[BoundedValue] = None
    hG_provenance: Optional[str] = None
    vere_jones: Optional[GraphClass] = None
    mme_statement: str = MME_UNDETERMINED
    mme_beyond_L: Optional[str] = None
    hypotheses_used: Tuple[Tuple[str, Optional[bool], str], ...] = ()
    root: Optional[dict] = None
    trunc: int = 0
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def conclusion_available(self) -> bool:
        return self.mme_statement not in (MME_UNAVAILABLE, MME_UNDETERMINED)

    def to_dict(self) -> dict:
        return {
            "hL": self.hL,
            "hL_provenance": self.hL_provenance,
            "f_at_hL": self.f_at_hL.to_dict(),
            "regime": self.regime,
            "hX": self.hX.to_dict(),
            "hX_provenance": self.hX_provenance,
            "hG": self.hG.to_dict() if self.hG else None,
            "hG_provenance": self.hG_provenance,
            "vere_jones": self.vere_jones.to_dict() if self.vere_jones else None,
            "mme_statement": self.mme_statement,
            "mme_text": _CITED[self.mme_statement],
            "mme_beyond_L": self.mme_beyond_L,
            "conclusion_available": self.conclusion_available,
            "hypotheses_used": [
                {"flag": n, "value": v, "provenance": p} for n, v, p in self.hypotheses_used
            ],
            "root": self.root,
            "trunc": self.trunc,
            "notes": list(self.notes),
        }


# -- the loop graph ----------------------------------------------------------------


def _over(series, hG: BoundedValue, trunc, tol, max_trunc, weight=0, stop=None):
    """Enclosure of the (moment) series over every point of the interval hG."""
    lo, t1 = refine(series, hG.upper, trunc, tol, max_trunc, weight, stop)
    if hG.width == 0:
        return lo, t1
    hi, t2 = refine(series, hG.lower, trunc, tol, max_trunc, weight, stop)
    return BoundedValue(lo.lower, hi.upper), max(t1, t2)


def vere_jones(series: CountSeries, hG, threshold: float = 10.0, *,
               on_boundary: Optional[bool] = None, trunc: int = 120,
               max_trunc: int = 32768, tol: float = 1e-9) -> GraphClass:
    """Classify the loop graph with loop counts ``series`` at entropy ``hG``.

    ``hG`` is a float or a :class:`BoundedValue` enclosure (such as a root of
    f = 1); series values are then enclosed over the whole interval.
    ``on_boundary=True`` records a proof that the series equals 1 at ``hG``.
    The moment series is declared divergent when its certified partial sums
    pass ``threshold`` and no finite tail bound exists.
    """
    if not isinstance(hG, BoundedValue):
        hG = BoundedValue.point(float(hG))
    point = hG.upper
    sv, t = _over(series, hG, trunc, tol, max_trunc,
                  stop=lambda v: v.upper < 1 or v.lower > 1)
    if sv.upper < 1:
        return GraphClass(TRANSIENT, sv, None, point, trunc=t)
    if sv.lower > 1 or not (on_boundary or sv.contains(1.0)):
        return GraphClass(UNDETERMINED, sv, None, point, trunc=t)
    mv, tm = _over(series, hG, trunc, tol, max_trunc, weight=1)
    if mv.upper < INF:
        return GraphClass(POSITIVE, sv, mv, point, trunc=tm)
    n = threshold_crossing(series, point, threshold, tm)
    if n is not None:
        return GraphClass(NULL, sv, mv, point, (threshold, n), trunc=tm)
    return GraphClass(UNDETERMINED, sv, mv, point, trunc=tm)


# -- hypotheses ------------------------------------------------------------------------


def resolve_unique_decomposition(code: CodeFamily, max_len: int = 12) -> Flag:
    """The unique-decomposition flag, deciding it when the family allows."""
    flag = code.flag("unique_decomposition")
    if flag.value is not None:
        return flag
    if code.explicit is not None:
        return Flag(sardinas_patterson(code.explicit).positive, "decided")
    if code.prefix_suffix_pattern and code.enumerator is not None:
        # decipherability implies decomposition
        if check_prefix_suffix_disjoint(code, max_len).status == "certified":
            return Flag(True, "certified-pattern")
    return flag


def _resolve_hL(code: CodeFamily, cfg: AnalyzeConfig):
    if cfg.hl_exact is not None:
        return float(cfg.hl_exact), "user-exact"
    if cfg.hl_estimate_nmax is not None:
        est = estimate_hL(code, cfg.hl_estimate_nmax)
        return est.estimate, "estimated"
    if code.exact_hL is not None:
        return code.exact_hL.value, code.exact_hL.provenance
    if code.finite:
        return -INF, "exact-finite"
    est = estimate_hL(code, 10)
    return est.estimate, "estimated"


def _solve(code: CodeFamily, hL: float, cfg: AnalyzeConfig):
    series = code.series
    kw = dict(trunc=min(cfg.trunc, 64), max_trunc=cfg.max_trunc, tol=cfg.root_tol)
    if math.isfinite(hL):
        hi = upper_bracket(series, trunc=kw["trunc"], max_trunc=cfg.max_trunc)
        if hi > hL:
            return solve_f_equals_one(series, (hL, hi), **kw)
    return solve_f_equals_one(series, **kw)


def analyze(code: CodeFamily, config: Optional[AnalyzeConfig] = None) -> EntropyReport:
    """Entropy, regime, loop-graph class and maximal-measure statement for a code."""
    cfg = config or AnalyzeConfig()
    series = code.series
    notes = []
    hL, hL_prov = _resolve_hL(code, cfg)
    exact_hL = hL_prov in ("exact-builtin", "asserted-by-paper", "exact-finite")
    flags = dict(code.flags)

    if hL == -INF:
        fv, trunc = BoundedValue(INF, INF), 0
        regime = ABOVE
    else:
        fv, trunc = refine(series, hL, cfg.trunc, cfg.tol, cfg.max_trunc)
        exact_f = code.exact_f_at_hL if exact_hL else None
        if fv.upper < 1:
            regime = BELOW
        elif fv.lower > 1:
            regime = ABOVE
        elif exact_f is not None and exact_f.value == 1.0:
            regime = EQUAL
            notes.append(f"f(hL) = 1 from closed form: {exact_f.label}")
        else:
            regime = UNDETERMINED
        if exact_f is not None and not fv.contains(exact_f.value):
            notes.append(f"closed form {exact_f.value!r} outside the interval {fv}")
        if fv.width > cfg.tol:
            notes.append(f"f(hL) interval width {fv.width:.3g} above tol at trunc {trunc}")
    if not exact_hL:
        notes.append(f"hL provenance is {hL_prov}; regime relies on it")
    for note in code.notes:
        notes.append(note)

    root = None
    hG = hG_prov = graph = beyond = None
    if regime == BELOW:
        hX, hX_prov = BoundedValue.point(hL), "equals hL"
        mme = MME_IN_L
        if code.exact_abscissa is not None:
            a = code.exact_abscissa.value
            hG, hG_prov = BoundedValue.point(a), "abscissa (exact-builtin)"
        else:
            hG, hG_prov = abscissa(series), "abscissa (heuristic)"
        if math.isfinite(hG.upper):
            graph = vere_jones(series, hG.upper, cfg.divergence_threshold,
                               max_trunc=cfg.moment_max_trunc)
    elif regime == EQUAL:
        hX, hX_prov = BoundedValue.point(hL), "equals hL"
        hG, hG_prov = BoundedValue.point(hL), "equals hL"
        graph = vere_jones(series, hL, cfg.divergence_threshold, on_boundary=True,
                           max_trunc=cfg.moment_max_trunc)
        mme = MME_OPEN
        ud, bl = flags["unique_decipherability"], flags["B_disjoint_from_L"]
        if ud.holds and bl.holds:
            mme = MME_RECURRENCE
            beyond = _beyond_verdict(graph)
        try:
            r = _solve(code, hL, cfg)
            notes.append(f"root of f = 1 at {r.root!r} (>= hL - 1e-9: {r.enclosure.upper >= hL - 1e-9})")
        except (NoBracket, TailUnbounded):
            pass
    else:
        ud = resolve_unique_decomposition(code, cfg.max_len)
        flags["unique_decomposition"] = ud
        try:
            r = _solve(code, hL, cfg)
        except (NoBracket, TailUnbounded) as exc:
            r = None
            notes.append(f"no root of f = 1: {exc}")
        if r is not None:
            root = r.to_dict()
        if regime == ABOVE and r is not None and ud.holds:
            hX, hX_prov = r.enclosure, "root of f = 1"
            hG, hG_prov = r.enclosure, "root of f = 1"
            mme = MME_UNIQUE
            graph = vere_jones(series, r.enclosure, cfg.divergence_threshold, on_boundary=True,
                               max_trunc=cfg.moment_max_trunc)
        elif r is not None:
            hX = BoundedValue(max(hL, -INF), max(hL, r.enclosure.upper))
            hX_prov = "enclosure [hL, root upper]"
            hG, hG_prov = r.enclosure, "root of f = 1"
            mme = MME_UNAVAILABLE if regime == ABOVE else MME_UNDETERMINED
            if regime == ABOVE:
                notes.append("UniqueDecompositionUnknown: unique decomposition not established")
        else:
            hX, hX_prov = BoundedValue.point(hL), "equals hL (f <= 1 above the abscissa)"
            mme = MME_UNDETERMINED

    used = tuple((n, flags[n].value, flags[n].provenance) for n in sorted(flags))
    return EntropyReport(
        hL=hL, hL_provenance=hL_prov, f_at_hL=fv, regime=regime, hX=hX,
        hX_provenance=hX_prov, hG=hG, hG_provenance=hG_prov, vere_jones=graph,
        mme_statement=mme, mme_beyond_L=beyond, hypotheses_used=used, root=root,
        trunc=trunc, notes=tuple(notes),
    )


def _beyond_verdict(graph: GraphClass) -> str:
    if graph.cls == POSITIVE:
        return "exists"
    if graph.cls in (NULL, TRANSIENT):
        return "does_not_exist"
    return "undetermined"


@dataclass(frozen=True)
class BeyondLVerdict:
    verdict: str  # exists | does_not_exist | undetermined | hypotheses_not_established
    graph: Optional[GraphClass]
    reason: str

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason,
                "graph": self.graph.to_dict() if self.graph else None}


def mme_beyond_L(code: CodeFamily, config: Optional[AnalyzeConfig] = None) -> BeyondLVerdict:
    """Does a measure of maximal entropy live off the limit subshift?

    Only meaningful when f(hL) = 1 holds exactly; then, given unique
    decipherability and that no concatenation point lies in the limit subshift,
    the answer is yes exactly for a positive recurrent loop graph.
    """
    cfg = config or AnalyzeConfig()
    report = analyze(code, cfg)
    if report.regime != EQUAL:
        raise RegimeMismatch(f"regime is {report.regime}, not {EQUAL}")
    ud, bl = code.flag("unique_decipherability"), code.flag("B_disjoint_from_L")
    if not (ud.holds and bl.holds):
        return BeyondLVerdict("hypotheses_not_established", report.vere_jones,
                              "unique decipherability and B disjoint from L not both established")
    graph = report.vere_jones
    return BeyondLVerdict(_beyond_verdict(graph), graph, f"loop graph is {graph.cls}")
