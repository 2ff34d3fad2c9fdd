"""Command-line driver: ``logbs <command> --job FILE``.

Exit status: 0 success, 1 error, 2 flagged result (capped basis or
heuristic chain stabilization) unless ``--allow-flagged`` is given.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import __version__
from .arith import MultiPoly, format_rational
from .bsideal import (BSError, BSResult, ann_fs, b_function, bs_ideal, bs_ideal_localized, certify,
                      support_tower)
from .frontend import DEFAULT_OPTIONS, JobError, JobSpec, ParseError, parse_job, parse_poly
from .groebner import BasisCache, CappedError, ComputationTimeout, GroebnerError, deadline
from .monoid import MonoidIdeal, minimal_generators, power
from .support import (NonSplitError, decompose_locus, exp_image_of_locus, exp_images_equal, factor_linear,
                      structural_check)
from .weyl import CONVENTION, AlgebraProfile, parse_operator

SCHEMA = "logbs-report/1"
CACHE_ENV = "LOGBS_CACHE"
COMMANDS = ("bfun", "ann", "bs", "bs-local", "tower", "locus", "exp", "check", "report")

log = logging.getLogger("logbs")


class Flagged(Exception):
    pass


# ---------------------------------------------------------------------------
# formatting

def factored(p: MultiPoly) -> str:
    """Product of linear factors times the residual, e.g. (s + 1) * (s + 1/2)."""
    if p.is_constant():
        return str(p)
    fl, res = factor_linear(p)
    parts = []
    if not (res.is_constant() and res.constant_term() == 1):
        parts.append(str(res) if res.is_constant() else f"({res})")
    for L, k in fl:
        parts.append(f"({L.to_str(p.vars)})" + (f"^{k}" if k > 1 else ""))
    return " * ".join(parts)


def _cert_dict(cert, res: BSResult) -> dict:
    d = cert.to_dict()
    d["F"] = [str(f) for f in res.F]
    d["xvars"] = list(res.F[0].vars)
    d["svars"] = list(res.svars)
    return d


def _flat_dict(V, svars) -> dict:
    return {"dimension": V.dimension,
            "equations": [L.to_str(svars) for L in V.normals],
            "rows": [[format_rational(x) for x in row] for row in V.rows]}


def _coset_dict(c) -> dict:
    return {"dimension": c.dimension, "lattice": [list(row) for row in c.lattice],
            "phases": [format_rational(p) for p in c.phases], "text": c.to_str()}


def _bs_dict(res: BSResult) -> dict:
    out = {
        "svars": list(res.svars),
        "K": [list(v) for v in res.K.generators],
        "m": list(res.m),
        "generators": [str(g) for g in res.generators],
        "factored": [factored(g) for g in res.generators],
        "flags": list(res.flags),
    }
    if res.chain:
        out["chain"] = [{"k": st.k, "generators": [str(g) for g in st.generators],
                         "contains_previous": st.contains_previous} for st in res.chain]
        out["k_star"] = res.k_star
        out["window"] = res.window
    return out


def _checks_block(res: BSResult) -> dict:
    rep = structural_check(res)
    return {
        "checks": {k: c.to_dict() for k, c in rep.checks.items()},
        "components": [_flat_dict(V, res.svars) for V in rep.components],
        "exp_components": [_coset_dict(c) for c in rep.exp_components],
        "_passed": rep.all_passed,
    }


# ---------------------------------------------------------------------------
# commands

class Context:
    def __init__(self, job: JobSpec, args):
        self.job = job
        opts = dict(job.options)
        if getattr(args, "cap", None) is not None:
            opts["cap"] = args.cap
        if getattr(args, "window", None) is not None:
            opts["W"] = args.window
        if getattr(args, "timeout", None) is not None:
            opts["timeout"] = args.timeout
        self.options = opts
        cache_dir = getattr(args, "cache", None) or os.environ.get(CACHE_ENV)
        self.cache = BasisCache(cache_dir) if cache_dir else None
        self.jmax = getattr(args, "jmax", None) or 3
        self.mode = getattr(args, "mode", None) or "generators"

    @property
    def K(self) -> MonoidIdeal:
        return minimal_generators(self.job.K)

    def kw(self) -> dict:
        return {"degree_cap": self.options["cap"], "cache": self.cache}

    def bs(self) -> BSResult:
        if any(self.job.m):
            return bs_ideal_localized(self.job.F, self.K, self.job.m, self.options["W"],
                                      kmax=self.options["kmax"], **self.kw())
        return bs_ideal(self.job.F, self.K, **self.kw())


def cmd_bfun(ctx: Context) -> dict:
    F = ctx.job.F
    f = F[0]
    for g in F[1:]:
        f = f * g
    b = b_function(f, **ctx.kw())
    return {"results": {"f": str(f), "b": str(b), "factored": factored(b)}, "text": factored(b)}


def cmd_ann(ctx: Context) -> dict:
    A = ann_fs(ctx.job.F, **ctx.kw())
    gens = [str(g) for g in A.generators]
    return {"results": {"svars": list(A.svars), "generators": gens}, "text": "\n".join(gens)}


def _bs_payload(ctx: Context, res: BSResult) -> dict:
    block = _checks_block(res)
    passed = block.pop("_passed")
    text = "<" + ", ".join(factored(g) for g in res.generators) + ">"
    for c in res.certificates:
        text += "\ncertificate: " + c.identity()
    out = {"results": _bs_dict(res), "certificates": [_cert_dict(c, res) for c in res.certificates],
           "text": text, "flags": list(res.flags)}
    out.update(block)
    if not passed:
        out["flags"].append("structural-check-failed")
    return out


def cmd_bs(ctx: Context) -> dict:
    if any(ctx.job.m):
        raise JobError("bs computes the non-localized ideal; use bs-local for m != 0")
    return _bs_payload(ctx, ctx.bs())


def cmd_bs_local(ctx: Context) -> dict:
    res = bs_ideal_localized(ctx.job.F, ctx.K, ctx.job.m, ctx.options["W"], kmax=ctx.options["kmax"], **ctx.kw())
    return _bs_payload(ctx, res)


def cmd_locus(ctx: Context) -> dict:
    res = ctx.bs()
    loc = decompose_locus(res.generators, res.r) if not res.is_unit else None
    comps = [_flat_dict(V, res.svars) for V in loc.components] if loc else []
    text = "\n".join(V.to_str(res.svars) for V in loc.components) if loc else "empty locus"
    return {"results": _bs_dict(res), "components": comps, "text": text, "flags": list(res.flags)}


def cmd_exp(ctx: Context) -> dict:
    res = ctx.bs()
    cos = exp_image_of_locus(decompose_locus(res.generators, res.r)) if not res.is_unit else []
    text = "\n".join(c.to_str() for c in cos) if cos else "empty"
    return {"results": _bs_dict(res), "exp_components": [_coset_dict(c) for c in cos], "text": text,
            "flags": list(res.flags)}


def cmd_tower(ctx: Context) -> dict:
    T = support_tower(ctx.job.F, ctx.K, ctx.job.m, ctx.jmax, mode=ctx.mode,
                      W=ctx.options["W"], kmax=ctx.options["kmax"], **ctx.kw()) if any(ctx.job.m) else \
        support_tower(ctx.job.F, ctx.K, None, ctx.jmax, mode=ctx.mode, **ctx.kw())

    def level(lv):
        return {"j": lv.j, "K": [list(v) for v in lv.K.generators], "result": _bs_dict(lv.result),
                "exp_image": [_coset_dict(c) for c in lv.exp_image]}

    lines = []
    for lv in T.levels:
        lines.append(f"j={lv.j}: <" + ", ".join(factored(g) for g in lv.result.generators) + "> Exp: "
                     + (" u ".join(c.to_str() for c in lv.exp_image) or "empty"))
    lines.append("Exp-images coincide: " + ("yes" if T.coincide else "no"))
    out = {"results": {"mode": T.mode, "levels": [level(lv) for lv in T.levels], "coincide": T.coincide},
           "text": "\n".join(lines), "flags": list(T.flags)}
    if T.aux_levels:
        out["results"]["aux_levels"] = [level(lv) for lv in T.aux_levels]
        out["results"]["aux_coincide"] = T.aux_coincide
    certs = []
    for lv in T.levels + T.aux_levels:
        certs += [_cert_dict(c, lv.result) for c in lv.result.certificates]
    out["certificates"] = certs
    return out


def cmd_report(ctx: Context) -> dict:
    res = ctx.bs()
    out = _bs_payload(ctx, res)
    # Exp-invariance under K -> K^2 (the same localization)
    try:
        K2 = power(ctx.K, 2)
        res2 = bs_ideal_localized(ctx.job.F, K2, ctx.job.m, ctx.options["W"], kmax=ctx.options["kmax"], **ctx.kw()) \
            if any(ctx.job.m) else bs_ideal(ctx.job.F, K2, **ctx.kw())
        e1 = exp_image_of_locus(decompose_locus(res.generators, res.r)) if not res.is_unit else []
        e2 = exp_image_of_locus(decompose_locus(res2.generators, res2.r)) if not res2.is_unit else []
        same = exp_images_equal(e1, e2)
        out["exp_invariance"] = {"K2": [list(v) for v in K2.generators], "generators_K2": [str(g) for g in res2.generators],
                                 "exp_K2": [_coset_dict(c) for c in e2], "equal": same}
        out["certificates"] += [_cert_dict(c, res2) for c in res2.certificates]
        if not same:
            out["flags"].append("exp-invariance-failed")
        for fl in res2.flags:
            if fl not in out["flags"] and fl != "empty-locus":
                out["flags"].append(fl)
    except NonSplitError as exc:
        out["exp_invariance"] = {"equal": None, "error": str(exc)}
    out["text"] += "\nchecks: " + ", ".join(f"{k}={v['status']}" for k, v in out["checks"].items())
    return out


HANDLERS = {"bfun": cmd_bfun, "ann": cmd_ann, "bs": cmd_bs, "bs-local": cmd_bs_local, "tower": cmd_tower,
            "locus": cmd_locus, "exp": cmd_exp, "report": cmd_report}


# ---------------------------------------------------------------------------
# running

FLAG_WORDS = ("capped", "heuristic-stabilization", "partial", "structural-check-failed", "exp-invariance-failed",
              "tower-modes-disagree", "timeout")


def run_job(command: str, job: JobSpec, args) -> dict:
    """Run one command on one job; returns the report dict (never raises for computational failures)."""
    ctx = Context(job, args)
    report = {"schema": SCHEMA, "version": __version__, "convention": CONVENTION, "command": command,
              "job": job.to_dict(), "options": dict(ctx.options)}
    t0 = time.perf_counter()
    status = "ok"
    try:
        with deadline(ctx.options["timeout"] or None):
            payload = HANDLERS[command](ctx)
        report.update(payload)
    except CappedError as exc:
        report.update({"flags": ["capped"], "error": str(exc)})
        status = "flagged"
    except ComputationTimeout as exc:
        report.update({"flags": ["timeout"], "error": str(exc)})
        status = "error"
    except (GroebnerError, BSError, NonSplitError, JobError, ValueError) as exc:
        report.update({"flags": report.get("flags", []), "error": f"{type(exc).__name__}: {exc}"})
        status = "error"
    report.setdefault("flags", [])
    if status == "ok" and any(f in FLAG_WORDS for f in report["flags"]):
        status = "flagged"
    report["status"] = status
    if ctx.cache is not None:
        report["cache"] = {"hits": ctx.cache.hits, "misses": ctx.cache.misses}
    if getattr(args, "timings", False):
        report["timings"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return report


def replay(report: dict) -> List[dict]:
    """Re-verify every certificate stored in a report; returns one verdict per certificate."""
    verdicts = []
    certs = list(report.get("certificates", []))
    for sub in report.get("reports", []):
        certs += sub.get("certificates", [])
    for c in certs:
        xvars = tuple(c["xvars"])
        svars = tuple(c["svars"])
        F = [parse_poly(f, xvars) for f in c["F"]]
        prof = AlgebraProfile(xvars, (), svars)
        b = parse_poly(c["generator"], svars)
        wit = [(parse_operator(w["operator"], prof), tuple(w["v"])) for w in c["witnesses"]]
        ok = certify(b, wit, F, shift=tuple(c.get("shift", [0] * len(F))), svars=svars)
        verdicts.append({"generator": c["generator"], "identity": c.get("identity", ""), "verified": ok})
    return verdicts


def _load_job(path: str) -> JobSpec:
    with open(path) as fh:
        text = fh.read()
    return parse_job(text)


def _batch_worker(payload):
    command, path, argdict = payload
    args = argparse.Namespace(**argdict)
    try:
        job = _load_job(path)
    except (ParseError, JobError, OSError) as exc:
        return {"schema": SCHEMA, "version": __version__, "command": command, "job_file": path,
                "status": "error", "error": str(exc), "flags": []}
    rep = run_job(command, job, args)
    rep["job_file"] = path
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="logbs", description="Bernstein-Sato ideals along monoid ideals.")
    p.add_argument("--version", action="version", version=f"logbs {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        if name == "check":
            sp.add_argument("--report", required=True, help="JSON report to replay")
            continue
        if name == "report":
            sp.add_argument("--job", help="job file")
            sp.add_argument("--batch", nargs="+", metavar="JOB", help="several job files, run on a worker pool")
            sp.add_argument("--workers", type=int, default=None)
        else:
            sp.add_argument("--job", required=True, help="job file")
        sp.add_argument("--cap", type=int, help="degree cap for Groebner completions")
        sp.add_argument("--window", type=int, help="stabilization window W for localized chains")
        sp.add_argument("--timeout", type=int, help="time budget in seconds (0 disables)")
        sp.add_argument("--cache", help=f"basis cache directory (default ${CACHE_ENV})")
        sp.add_argument("--jmax", type=int, help="number of tower levels")
        if name == "tower":
            sp.add_argument("--mode", choices=("generators", "powers", "both"), default="generators")
        sp.add_argument("--allow-flagged", action="store_true", help="exit 0 on flagged results")
        sp.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
        sp.add_argument("--out", help="also write the JSON report to this file")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    return p


def _emit(report: dict, args) -> None:
    text = report.pop("text", None)
    blob = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(blob + "\n")
    if args.json or text is None:
        print(blob)
    else:
        print(text)
        if report.get("flags"):
            print("flags: " + ", ".join(report["flags"]))
    if report.get("error"):
        print(f"error: {report['error']}", file=sys.stderr)


def _exit_code(statuses: Sequence[str], allow_flagged: bool) -> int:
    if "error" in statuses:
        return 1
    if "flagged" in statuses and not allow_flagged:
        return 2
    return 0


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        try:
            with open(args.report) as fh:
                report = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read report: {exc}", file=sys.stderr)
            return 1
        try:
            verdicts = replay(report)
        except (ParseError, ValueError, KeyError) as exc:
            print(f"error: malformed certificate: {exc}", file=sys.stderr)
            return 1
        for v in verdicts:
            print(("ok      " if v["verified"] else "FAILED  ") + v["identity"])
        print(f"{sum(v['verified'] for v in verdicts)}/{len(verdicts)} certificates verified")
        return 0 if all(v["verified"] for v in verdicts) else 1

    if args.command == "report" and args.batch:
        argdict = {k: v for k, v in vars(args).items() if k not in ("batch",)}
        payloads = [("report", path, argdict) for path in args.batch]
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            reports = list(pool.map(_batch_worker, payloads))
        combined = {"schema": SCHEMA, "version": __version__, "convention": CONVENTION, "command": "report",
                    "reports": reports,
                    "text": "\n".join(f"{r['job_file']}: {r['status']}" for r in reports)}
        _emit(combined, args)
        return _exit_code([r["status"] for r in reports], args.allow_flagged)

    if not args.job:
        print("error: --job is required", file=sys.stderr)
        return 1
    try:
        job = _load_job(args.job)
    except ParseError as exc:
        print(f"{args.job}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return 1
    except (JobError, OSError) as exc:
        print(f"{args.job}: {exc}", file=sys.stderr)
        return 1
    report = run_job(args.command, job, args)
    _emit(report, args)
    return _exit_code([report["status"]], args.allow_flagged)


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
