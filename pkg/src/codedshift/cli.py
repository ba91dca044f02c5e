"""Command-line interface: ``codedshift <command> ...``, JSON on stdout.

Exit status 0 on success, 1 on a domain error (the error class is named in the
output), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional

from . import acceptance
from .catalog import BUILTIN_IDS
from .classify import AnalyzeConfig, analyze, vere_jones
from .codecheck import (
    DECIPHERABILITY,
    DECOMPOSITION,
    CodeVerdict,
    check_prefix_suffix_disjoint,
    find_double_factorization,
    sardinas_patterson,
)
from .errors import CodedShiftError
from .formats import load_code, load_sft
from .genfun import eval_f, eval_moment, solve_f_equals_one
from .language import (
    sample_language,
    verify_aux1_bound,
    verify_aux2_growth,
    verify_wordcount,
)
from .sft import first_return_counts, loop_entropy, perron_entropy, restricted_entropy

PAPER, ORACLE, NUMERIC = "paper-exact", "derived-oracle", "numeric-interval"


# -- deterministic JSON ---------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys, 17-digit floats and infinities as strings."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = sorted((str(k), v) for k, v in obj.items())
        body = ",\n".join(f"{pad}{dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in items)
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj)
        return "[\n" + body + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalars
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def report(command: str, inputs: dict, result, provenance: List[tuple]) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "provenance": [{"claim": c, "source": s} for c, s in provenance],
    }


def _source(prov: str) -> str:
    if prov in ("asserted-by-paper", "exact-builtin"):
        return PAPER
    if prov in ("exact-finite", "exact-spectral", "user-exact"):
        return ORACLE
    return NUMERIC


# -- commands ----------------------------------------------------------------------------


def _config(args) -> AnalyzeConfig:
    return AnalyzeConfig(
        trunc=args.trunc, tol=args.tol, max_trunc=args.max_trunc,
        divergence_threshold=args.divergence_threshold,
        hl_exact=args.hl_exact, hl_estimate_nmax=args.hl_estimate,
        max_len=args.max_len,
    )


def cmd_analyze(args):
    code = load_code(args.code)
    rep = analyze(code, _config(args))
    prov = [("hL", _source(rep.hL_provenance)), ("f_at_hL", NUMERIC)]
    prov.append(("regime", PAPER if rep.regime == "equal_one" else NUMERIC))
    prov.append(("hX", _source(rep.hL_provenance) if rep.regime in ("below_one", "equal_one") else NUMERIC))
    if rep.vere_jones is not None:
        prov.append(("vere_jones", NUMERIC))
    inputs = {"code": args.code, "trunc": args.trunc, "tol": args.tol, "max_trunc": args.max_trunc,
              "divergence_threshold": args.divergence_threshold}
    return report("analyze", inputs, rep.to_dict(), prov)


def cmd_classify_graph(args):
    code = load_code(args.code)
    if args.hg is not None:
        hG, prov, boundary = args.hg, "user", None
    else:
        rep = analyze(code, _config(args))
        if rep.hG is None:
            raise CodedShiftError("no loop-graph entropy available for this code")
        hG, prov = rep.hG, rep.hG_provenance
        boundary = rep.regime in ("equal_one", "above_one")
    g = vere_jones(code.series, hG, args.divergence_threshold, on_boundary=boundary,
                   trunc=args.trunc, max_trunc=args.moment_max_trunc)
    out = g.to_dict()
    out["hG_provenance"] = prov
    inputs = {"code": args.code, "hg": args.hg, "divergence_threshold": args.divergence_threshold}
    return report("classify-graph", inputs, out, [("class", NUMERIC)])


def cmd_check_code(args):
    code = load_code(args.code)
    verdicts = {}
    if args.property in ("decomposition", "both"):
        if code.explicit is not None:
            v = sardinas_patterson(code.explicit)
        else:
            w = find_double_factorization(code, args.max_len)
            v = (CodeVerdict(DECOMPOSITION, "fails", witness=w, reason="bounded search")
                 if w else CodeVerdict(DECOMPOSITION, "holds_up_to_bound", bound=args.max_len))
        verdicts[DECOMPOSITION] = v.to_dict(code.show)
    if args.property in ("decipherability", "both"):
        verdicts[DECIPHERABILITY] = check_prefix_suffix_disjoint(code, args.max_len).to_dict(code.show)
    prov = [(k, ORACLE) for k in sorted(verdicts)]
    return report("check-code", {"code": args.code, "max_len": args.max_len,
                                 "property": args.property}, verdicts, prov)


def cmd_enumerate(args):
    code = load_code(args.code)
    s = sample_language(code, args.n, args.cap)
    return report("enumerate", {"code": args.code, "n": args.n, "cap": args.cap},
                  s.to_dict(code.show, counts_only=args.counts_only), [("L_n", ORACLE)])


def cmd_verify_bounds(args):
    code = load_code(args.code)
    if args.which == "wordcount":
        if args.h is None:
            raise CodedShiftError("--h is required for wordcount")
        r = verify_wordcount(code, args.h, args.n_max, args.cap)
    elif args.which == "aux1":
        if args.alpha is None:
            raise CodedShiftError("--alpha is required for aux1")
        r = verify_aux1_bound(code, args.alpha, args.M, args.n_max, args.cap)
    else:
        if args.alpha is None or args.t is None:
            raise CodedShiftError("--alpha and --t are required for aux2")
        r = verify_aux2_growth(code, args.alpha, args.t, args.k_max, args.oracle_n_max)
    return report("verify-bounds", {"code": args.code, "which": args.which},
                  r.to_dict(), [(args.which, ORACLE)])


def cmd_sft_entropy(args):
    sft = load_sft(args.file, args.letter)
    spec = first_return_counts(sft, args.i_max)
    h_loop, x, root = loop_entropy(spec)
    h_perron = perron_entropy(sft)
    out = {
        "h_loop": h_loop,
        "root_x": x,
        "h_perron": h_perron,
        "h_restricted": restricted_entropy(sft),
        "T_prefix": list(spec.T),
        "agreement": abs(h_loop - h_perron) <= 1e-8,
        "root": root.to_dict(),
    }
    return report("sft-entropy", {"file": args.file, "letter": args.letter, "i_max": args.i_max},
                  out, [("h_loop", NUMERIC), ("h_perron", ORACLE)])


def cmd_genfun(args):
    code = load_code(args.code)
    if args.action == "eval":
        fn = eval_moment if args.moment else eval_f
        v = fn(code.series, args.alpha, args.trunc)
        out = v.to_dict()
        out["width"] = v.width
        inputs = {"code": args.code, "alpha": args.alpha, "trunc": args.trunc, "moment": args.moment}
    else:
        hint = (args.lo, args.hi) if args.lo is not None and args.hi is not None else None
        r = solve_f_equals_one(code.series, hint, tol=args.tol)
        out = r.to_dict()
        inputs = {"code": args.code, "tol": args.tol, "bracket": list(hint) if hint else None}
    return report(f"genfun {args.action}", inputs, out, [("value", NUMERIC)])


def cmd_verify_paper(args):
    only = set(args.only) if args.only else None
    results = acceptance.run_all(only)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = {"criteria": [r.to_dict(timings=args.timings) for r in results],
           "passed": all(r.passed for r in results)}
    rep = report("verify-paper", {"only": sorted(only) if only else None}, out,
                 [(f"criterion {r.number}", PAPER) for r in results])
    rep["_exit"] = 0 if out["passed"] else 1
    return rep


# -- parser ------------------------------------------------------------------------------------


def _code_arg(p):
    p.add_argument("code", help="code file, builtin:<id>[:k=v] (ids: " + ", ".join(BUILTIN_IDS)
                   + ") or words:w1,w2,...")


def _analysis_flags(p):
    p.add_argument("--trunc", type=int, default=120, help="starting truncation (default 120)")
    p.add_argument("--tol", type=float, default=1e-10, help="target interval width (default 1e-10)")
    p.add_argument("--max-trunc", type=int, default=1 << 15, help="largest truncation (default 32768)")
    p.add_argument("--divergence-threshold", type=float, default=10.0,
                   help="moment partial sum declaring divergence (default 10)")
    p.add_argument("--max-len", type=int, default=12, help="code-check bound (default 12)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--hl-exact", type=float, help="use this value for h(L)")
    g.add_argument("--hl-estimate", type=int, metavar="NMAX", help="estimate h(L) from subwords up to NMAX")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="codedshift", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="JSON output (always on)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="entropy, regime and measure statement")
    _code_arg(p)
    _analysis_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify-graph", help="recurrence class of the loop graph")
    _code_arg(p)
    _analysis_flags(p)
    p.add_argument("--hg", type=float, help="loop-graph entropy (default: from analyze)")
    p.add_argument("--moment-max-trunc", type=int, default=32768)
    p.set_defaults(func=cmd_classify_graph)

    p = sub.add_parser("check-code", help="unique decomposition / decipherability")
    _code_arg(p)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--property", choices=("decomposition", "decipherability", "both"), default="both")
    p.set_defaults(func=cmd_check_code)

    p = sub.add_parser("enumerate", help="language sample at length n")
    _code_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, required=True, help="code-word length cap")
    p.add_argument("--counts-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-bounds", help="check counting inequalities on the oracle")
    _code_arg(p)
    p.add_argument("--which", choices=("aux1", "aux2", "wordcount"), required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--h", type=float)
    p.add_argument("--M", type=float)
    p.add_argument("--t", type=int)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--cap", type=int)
    p.add_argument("--oracle-n-max", type=int, default=0)
    p.set_defaults(func=cmd_verify_bounds)

    p = sub.add_parser("sft-entropy", help="loop-method entropy of a nearest-neighbour SFT")
    p.add_argument("file")
    p.add_argument("--letter", help="distinguished letter (default: first)")
    p.add_argument("--i-max", type=int, default=12)
    p.set_defaults(func=cmd_sft_entropy)

    p = sub.add_parser("genfun", help="evaluate f or solve f = 1")
    gsub = p.add_subparsers(dest="action", required=True)
    e = gsub.add_parser("eval")
    _code_arg(e)
    e.add_argument("--alpha", type=float, required=True)
    e.add_argument("--trunc", type=int, default=120)
    e.add_argument("--moment", action="store_true", help="first moment instead of f")
    e.set_defaults(func=cmd_genfun)
    s = gsub.add_parser("solve")
    _code_arg(s)
    s.add_argument("--lo", type=float)
    s.add_argument("--hi", type=float)
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_genfun)

    p = sub.add_parser("verify-paper", help="run the acceptance suite")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock seconds in the JSON (output no longer reproducible)")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except (CodedShiftError, OSError) as exc:
        err = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        print(dumps(err), file=stdout)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    status = rep.pop("_exit", 0)
    print(dumps(rep), file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
