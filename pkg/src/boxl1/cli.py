"""Command-line interface: ``boxl1 {exact,sim,sweep,rate,pt}``.

Records go to stdout as JSON (CSV file for ``sweep``); logs go to stderr.
Exit status 2 flags bad input, 3 a failed computation.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys

from . import asympt
from .angles import BINARY, ModelKind, ProblemDims, box_model
from .errors import Boxl1Error, DomainError, InvalidDims
from .exact import p_err_exact
from .numerics import QuadConfig
from .simulate import Method, SimConfig, run_trials

log = logging.getLogger("boxl1")

RECORD_KEYS = (
    "model", "k", "m", "n", "k_mu", "mu",
    "p_err_theory", "p_err_sim", "ci_lo", "ci_hi", "trials", "failures", "quad_err",
)
CSV_HEADER = ("m", "p_err_theory", "p_err_sim", "ci_lo", "ci_hi", "trials", "failures")


class UsageError(Exception):
    pass


def _model(args) -> ModelKind:
    if args.model == "box":
        if args.kmu is None:
            raise UsageError("--kmu is required for --model box")
        return box_model(args.kmu)
    return BINARY


def _dims(args, m) -> ProblemDims:
    return ProblemDims(args.n, m, args.k)


def _mu(model, dims):
    if not model.is_box or dims.n == dims.k:
        return None
    return 1.0 - model.k_mu / (dims.n - dims.k)


def _quad_cfg(tol):
    base = QuadConfig()
    return base if tol is None else base.scaled(tol / base.abs_tol)


def _record(model, dims, **fields) -> dict:
    rec = dict.fromkeys(RECORD_KEYS)
    rec.update(model=model.name, k=dims.k, m=dims.m, n=dims.n, k_mu=model.k_mu if model.is_box else None,
               mu=_mu(model, dims))
    rec.update(fields)
    return rec


def _theory(model, dims, tol):
    res = p_err_exact(model, dims, _quad_cfg(tol))
    return res.p, res.quadrature_err_bound


def _simulate(model, dims, args):
    cfg = SimConfig(model, dims, args.trials, args.seed, Method(args.method),
                    confidence=args.confidence, shuffle_support=args.shuffle_support)
    summ = run_trials(cfg)
    if summ.lp_errors:
        log.warning("%d trials hit LP errors and were excluded", summ.lp_errors)
    if summ.disagreements:
        log.warning("%d certificate/direct disagreements", summ.disagreements)
    return dict(p_err_sim=summ.p_hat, ci_lo=summ.ci_lo, ci_hi=summ.ci_hi, trials=summ.trials,
                failures=summ.failures)


def cmd_exact(args):
    model = _model(args)
    dims = _dims(args, args.m).check(model)
    p, err = _theory(model, dims, args.tol)
    return _record(model, dims, p_err_theory=p, quad_err=err)


def cmd_sim(args):
    model = _model(args)
    dims = _dims(args, args.m).check(model)
    fields = _simulate(model, dims, args)
    if args.theory:
        p, err = _theory(model, dims, args.tol)
        fields.update(p_err_theory=p, quad_err=err)
    return _record(model, dims, **fields)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def cmd_sweep(args):
    model = _model(args)
    if args.m_from > args.m_to:
        raise UsageError("--m-from must not exceed --m-to")
    grid = [_dims(args, m).check(model) for m in range(args.m_from, args.m_to + 1)]
    created = False
    try:
        with open(args.out, "w", newline="") as fh:
            created = True
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for dims in grid:
                p, _ = _theory(model, dims, args.tol)
                row = dict(m=dims.m, p_err_theory=p)
                if args.trials:
                    row.update(_simulate(model, dims, args))
                w.writerow([_fmt(row.get(key)) for key in CSV_HEADER])
                log.info("m=%d done", dims.m)
    except BaseException:
        if created and os.path.exists(args.out):
            os.remove(args.out)
        raise
    return None


def _rate_json(model, pt):
    return {
        "model": model, "alpha": pt.alpha, "beta": pt.beta, "mu": pt.mu_box,
        "exponent": pt.exponent, "rho1": pt.rho1, "mu_y": pt.mu_y, "gamma": pt.gamma,
    }


def _check_mu(args):
    if args.model == "box" and args.mu is None:
        raise UsageError("--mu is required for --model box")
    return args.mu if args.model == "box" else None


def cmd_rate(args):
    mu = _check_mu(args)
    return _rate_json(args.model, asympt.ldp_rate(args.model, args.alpha, args.beta, mu))


def cmd_pt(args):
    mu = _check_mu(args)
    a_w = asympt.pt_alpha(args.model, args.beta, mu)
    out = _rate_json(args.model, asympt.ldp_rate(args.model, a_w, args.beta, mu))
    out = {"alpha_w": a_w, **out}
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boxl1", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def dims_flags(sp, with_m=True):
        sp.add_argument("--model", choices=("binary", "box"), required=True)
        sp.add_argument("--k", type=int, required=True, help="sparsity (interior count for box)")
        if with_m:
            sp.add_argument("--m", type=int, required=True, help="number of measurements")
        sp.add_argument("--n", type=int, required=True, help="ambient dimension")
        sp.add_argument("--kmu", type=int, help="number of ones (box only)")
        sp.add_argument("--tol", type=float, help="quadrature absolute tolerance (default 1e-10)")

    def sim_flags(sp, trials_required):
        sp.add_argument("--trials", type=int, required=trials_required, default=0,
                        help="Monte Carlo trials")
        sp.add_argument("--seed", type=int, default=0, help="master seed (64-bit unsigned)")
        sp.add_argument("--method", choices=[m.value for m in Method], default="certificate",
                        help="failure test: null-space certificate, direct LP solve, or both")
        sp.add_argument("--confidence", type=float, default=0.95, help="Wilson interval level")
        sp.add_argument("--shuffle-support", action="store_true",
                        help="place the planted support at random positions")

    sp = sub.add_parser("exact", help="exact failure probability")
    dims_flags(sp)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("sim", help="Monte Carlo failure probability")
    dims_flags(sp)
    sim_flags(sp, True)
    sp.add_argument("--theory", action="store_true", help="also compute the exact value")
    sp.set_defaults(func=cmd_sim)

    sp = sub.add_parser("sweep", help="table of p_err over a range of m, written as CSV")
    dims_flags(sp, with_m=False)
    sp.add_argument("--m-from", type=int, required=True)
    sp.add_argument("--m-to", type=int, required=True)
    sim_flags(sp, False)
    sp.add_argument("--out", required=True, help="CSV output path")
    sp.set_defaults(func=cmd_sweep)

    for name, helptext, fn in (("rate", "large-deviation exponent at alpha", cmd_rate),
                               ("pt", "phase-transition ratio alpha_w", cmd_pt)):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--model", choices=("binary", "box"), required=True)
        if name == "rate":
            sp.add_argument("--alpha", type=float, required=True, help="m/n")
        sp.add_argument("--beta", type=float, required=True, help="k/n")
        sp.add_argument("--mu", type=float, help="box only: k_mu = (1 - mu)(n - k)")
        sp.set_defaults(func=fn)
    return p


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        out = args.func(args)
    except (UsageError, InvalidDims, DomainError, ValueError) as exc:
        if isinstance(exc, Boxl1Error) and not isinstance(exc, (InvalidDims, DomainError)):
            print(f"boxl1: computation failed: {exc}", file=sys.stderr)
            return 3
        print(f"boxl1: {exc}", file=sys.stderr)
        return 2
    except Boxl1Error as exc:
        print(f"boxl1: computation failed: {exc}", file=sys.stderr)
        return 3
    if out is not None:
        json.dump({k: _clean(v) for k, v in out.items()}, sys.stdout)
        sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
