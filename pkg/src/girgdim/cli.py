"""Command line interface: generate, infer, sweep, verify.

Exit codes: 0 success, 1 inconclusive verdict or failed verification,
2 usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import io as gio
from .dimension_test import (DEFAULT_C, ROUNDED_C, check_band_ratio, classify_geometry,
                             default_wc_grid, infer_dimension)
from .generators import GirgParams, calibrate_lambda, generate_chung_lu, generate_girg
from .graph import MAX_BAND_RATIO
from .rng_dist import INF, SeededStream, chi_p_mgf, chi_p_tail_bound, sample_chi_p_power, sample_unit_ball, lp_norm
from .weights_estimation import estimate_weights_from_degrees

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def parse_norm(text: str) -> float:
    if text.lower() in ("inf", "infinity", "max"):
        return INF
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"norm must be a number >= 1 or 'inf', got {text!r}") from None
    if not p >= 1 or math.isinf(p):
        raise argparse.ArgumentTypeError(f"norm must be >= 1, got {text!r}")
    return p


def norm_label(p: float) -> str:
    return "inf" if p == INF else repr(p)


def resolve_threads(flag) -> int:
    if flag is not None:
        return max(1, int(flag))
    env = os.environ.get("GIRGDIM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _common_band_args(p: argparse.ArgumentParser):
    p.add_argument("--c", type=float, default=DEFAULT_C,
                   help=f"band ratio, strictly inside (1, {MAX_BAND_RATIO:.6f}); default {DEFAULT_C}")
    p.add_argument("--allow-rounded-c", action="store_true", help=f"also accept c={ROUNDED_C}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="girgdim", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None, help="worker threads (overrides GIRGDIM_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a GIRG or Chung-Lu graph")
    g.add_argument("--model", choices=("girg", "chunglu"), default="girg")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--beta", type=float, required=True)
    g.add_argument("--w0", type=float, default=1.0)
    lam = g.add_mutually_exclusive_group()
    lam.add_argument("--avg-deg", type=float, default=None)
    lam.add_argument("--lambda", dest="lam", type=float, default=None)
    g.add_argument("--norm", type=parse_norm, default=INF)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", type=Path, required=True, help="output directory")

    i = sub.add_parser("infer", help="infer the latent dimension of a graph")
    i.add_argument("--edges", type=Path, required=True)
    i.add_argument("--weights", type=Path, default=None, help="'v w' file; degrees are used if omitted")
    _common_band_args(i)
    i.add_argument("--wc", type=float, nargs="+", default=None, help="explicit w_c values")
    i.add_argument("--wc-max", type=float, default=300.0)
    i.add_argument("--d-max", type=int, default=None)
    i.add_argument("--min-support", type=int, default=50)
    i.add_argument("--out", type=Path, required=True)

    s = sub.add_parser("sweep", help="clustering decay over a grid of dimensions")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.add_argument("--w0", type=float, default=1.0)
    s.add_argument("--norm", type=parse_norm, default=INF)
    s.add_argument("--ds", type=int, nargs="+", default=[1, 2, 3, 4, 5, 6])
    lam = s.add_mutually_exclusive_group()
    lam.add_argument("--avg-deg", type=float, default=None)
    lam.add_argument("--lambda", dest="lam", type=float, default=None)
    _common_band_args(s)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", type=Path, required=True)

    v = sub.add_parser("verify", help="run an oracle check")
    v.add_argument("--claim", required=True,
                   choices=("thm4", "chi-mean", "mgf", "tail", "ball-norm", "cc-identity", "cc-oracle"))
    v.add_argument("--d", type=int, default=None)
    v.add_argument("--p", type=parse_norm, default=None)
    v.add_argument("--lambda", dest="lam", type=float, default=None)
    v.add_argument("--epsilon", type=float, default=1.0)
    v.add_argument("--beta", type=float, default=6.0)
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--trials", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", type=Path, default=None, help="optional JSON report path")
    return parser


# -- commands -----------------------------------------------------------------------

def _finish(record: gio.RunRecord, out: Path, start: float):
    record.wall_time = round(time.time() - start, 3)
    gio.atomic_write_text(out / "run.json", gio.format_json(record.full()))


def cmd_generate(args, parser) -> int:
    if not args.beta > 2:
        parser.error(f"--beta must exceed 2, got {args.beta}")
    if args.n < 2 or args.d < 1 or not args.w0 > 0:
        parser.error("need --n >= 2, --d >= 1, --w0 > 0")
    start = time.time()
    if args.lam is not None:
        lam = args.lam
    else:
        lam = calibrate_lambda(args.n, args.beta, args.w0, 10.0 if args.avg_deg is None else args.avg_deg)
    params = {"model": args.model, "n": args.n, "d": args.d, "beta": args.beta, "w0": args.w0,
              "lambda": lam, "avg_deg": args.avg_deg, "norm": norm_label(args.norm)}
    record = gio.RunRecord("generate", params, args.seed)
    if args.model == "girg":
        g = generate_girg(GirgParams(args.n, args.d, args.beta, args.w0, lam, args.norm, args.seed))
    else:
        g = generate_chung_lu(args.n, args.beta, args.w0, lam, args.seed)
    out = args.out
    gio.write_edge_list(g, out / "edges.txt", record)
    gio.write_weights(g.weights, out / "weights.txt", record)
    record.outputs = ["edges.txt", "weights.txt"]
    if g.positions is not None:
        gio.write_positions(g.positions, out / "positions.txt", record)
        record.outputs.append("positions.txt")
    _finish(record, out, start)
    print(json.dumps({"n": g.n, "m": g.m, "lambda": lam, "out": str(out)}))
    return EXIT_OK


def cmd_infer(args, parser) -> int:
    try:
        check_band_ratio(args.c, args.allow_rounded_c)
    except ValueError as exc:
        parser.error(str(exc))
    start = time.time()
    try:
        g = gio.parse_edge_list(args.edges)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.weights is not None:
        g = g.with_weights(gio.read_weights(args.weights, g.n))
        source = "file"
    else:
        if g.m == 0:
            print("error: graph has no edges", file=sys.stderr)
            return EXIT_FAIL
        g = g.with_weights(estimate_weights_from_degrees(g).weights)
        source = "degree"
    grid = args.wc if args.wc else default_wc_grid(float(g.weights.min()), args.c, args.wc_max).tolist()
    params = {"edges": str(args.edges), "weights": None if args.weights is None else str(args.weights),
              "c": args.c, "w_c": grid, "d_max": args.d_max, "min_support": args.min_support,
              "weight_source": source}
    record = gio.RunRecord("infer", params)
    verdict = infer_dimension(g, args.c, grid, args.d_max, args.min_support, resolve_threads(args.threads),
                              source, args.allow_rounded_c)
    label = classify_geometry(verdict, g.n)
    doc = gio.verdict_to_dict(verdict, label, record)
    doc["graph"] = {"n": g.n, "m": g.m, "dropped_self_loops": g.meta.get("dropped_self_loops", 0),
                    "dropped_duplicates": g.meta.get("dropped_duplicates", 0)}
    gio.atomic_write_text(args.out / "verdict.json", gio.format_json(doc))
    gio.atomic_write_text(args.out / "bands.csv", gio.format_csv(gio.BAND_COLUMNS, gio.band_rows(verdict), record))
    record.outputs = ["verdict.json", "bands.csv"]
    _finish(record, args.out, start)
    print(json.dumps({"label": label, "aggregate_d": verdict.aggregate_d}))
    return EXIT_FAIL if label == "inconclusive" else EXIT_OK


def cmd_sweep(args, parser) -> int:
    from .experiments import sweep_decay

    if not args.beta > 2:
        parser.error(f"--beta must exceed 2, got {args.beta}")
    try:
        check_band_ratio(args.c, args.allow_rounded_c)
    except ValueError as exc:
        parser.error(str(exc))
    start = time.time()
    lam = args.lam if args.lam is not None else calibrate_lambda(
        args.n, args.beta, args.w0, 10.0 if args.avg_deg is None else args.avg_deg)
    rows, slope = sweep_decay(args.n, args.beta, args.ds, norm=args.norm, w0=args.w0, lam=lam,
                              seed=args.seed, c=args.c)
    params = {"n": args.n, "beta": args.beta, "w0": args.w0, "norm": norm_label(args.norm), "ds": args.ds,
              "lambda": lam, "c": args.c, "w_c": args.w0}
    record = gio.RunRecord("sweep", params, args.seed)
    csv_rows = [(r.d, None if r.cc_plus is None else repr(r.cc_plus), r.s_size, r.n_band, repr(r.global_cc),
                 int(r.flagged)) for r in rows]
    gio.atomic_write_text(args.out / "sweep.csv", gio.format_csv(
        ("d", "cc_plus", "s_size", "n_band", "global_cc", "flagged"), csv_rows, record))
    fit = {"schema": gio.SCHEMA, "slope": slope, "reference_slope": math.log(0.75),
           "fit_refused": slope is None, "run": record.header()}
    gio.atomic_write_text(args.out / "fit.json", gio.format_json(fit))
    record.outputs = ["sweep.csv", "fit.json"]
    _finish(record, args.out, start)
    print(json.dumps({"slope": slope}))
    return EXIT_OK


def _verify(args) -> dict:
    """Run one claim; returns a result dict with a boolean ``pass``."""
    from . import oracles

    seed = SeededStream(args.seed, 7)
    if args.claim == "thm4":
        d = args.d or 3
        p = INF if args.p is None else args.p
        trials = args.trials or 10**6
        rep = oracles.mc_triangle_prob(d, p, 1.0, 1.0, 1.0, 10**6, 1.0, trials, seed)
        tol = 4 * rep.stderr
        ok = abs(rep.estimate - rep.reference) <= tol
        return {"claim": "thm4", "estimate": rep.estimate, "reference": rep.reference, "tolerance": tol, "pass": ok}
    if args.claim == "chi-mean":
        d, p = args.d or 64, 2.0 if args.p is None else args.p
        trials = args.trials or 10**5
        z = sample_chi_p_power(p, d, seed, trials)
        ref = 2 * d / p
        return {"claim": "chi-mean", "estimate": float(z.mean()), "reference": ref, "tolerance": 0.01 * ref,
                "pass": abs(z.mean() - ref) <= 0.01 * ref}
    if args.claim == "mgf":
        d, p = args.d or 1, 2.0 if args.p is None else args.p
        lam = 0.1 if args.lam is None else args.lam
        ref = chi_p_mgf(p, lam) ** d
        trials = args.trials or 10**6
        est = float(np.mean(np.exp(lam * sample_chi_p_power(p, d, seed, trials))))
        return {"claim": "mgf", "estimate": est, "reference": ref, "tolerance": 0.01 * ref,
                "pass": abs(est - ref) <= 0.01 * ref}
    if args.claim == "tail":
        d, p = args.d or 32, 1.0 if args.p is None else args.p
        trials = args.trials or 10**5
        z = sample_chi_p_power(p, d, seed, trials)
        mean = 2 * d / p
        freq = float(np.mean(np.abs(z - mean) >= args.epsilon * mean))
        bound = chi_p_tail_bound(p, d, args.epsilon)
        tol = 3 * math.sqrt(max(bound * (1 - bound), 0.0) / trials)
        return {"claim": "tail", "estimate": freq, "reference": bound, "tolerance": tol, "pass": freq <= bound + tol}
    if args.claim == "ball-norm":
        from scipy.stats import kstest

        d, p = args.d or 2, 2.0 if args.p is None else args.p
        trials = args.trials or 10**5
        x = sample_unit_ball(d, p, seed, trials)
        stat = float(kstest(lp_norm(x, p) ** d, "uniform").statistic)
        tol = 1.63 / math.sqrt(trials)
        return {"claim": "ball-norm", "estimate": stat, "reference": 0.0, "tolerance": tol, "pass": stat < tol}
    if args.claim == "cc-identity":
        n, d = args.n or 500, args.d or 1
        lam = calibrate_lambda(n, args.beta, 1.0, 10.0)
        rep = oracles.mc_cc_identity_check(GirgParams(n, d, args.beta, 1.0, lam, seed=args.seed), args.trials or 2000)
        tol = 3 * rep.stderr
        return {"claim": "cc-identity", "estimate": rep.estimate, "reference": 0.0, "tolerance": tol,
                "pass": abs(rep.estimate) <= tol, **rep.extra}
    if args.claim == "cc-oracle":
        from .generators import generate_girg as gen
        trials = args.trials or 100
        rng = SeededStream(args.seed, 11).generator()
        bad = 0
        for k in range(trials):
            n = int(rng.integers(10, 201))
            d = int(rng.integers(1, 4))
            g = gen(GirgParams(n, d, 2.5, 1.0, float(rng.uniform(1, 20)), seed=args.seed + k))
            bad += oracles.global_cc_exact(g) != oracles.brute_force_global_cc(g)
        return {"claim": "cc-oracle", "estimate": bad, "reference": 0, "tolerance": 0, "pass": bad == 0}
    raise AssertionError(args.claim)


def cmd_verify(args, parser) -> int:
    try:
        result = _verify(args)
    except ValueError as exc:
        print(json.dumps({"claim": args.claim, "error": f"domain error: {exc}", "pass": False}))
        return EXIT_USAGE
    result["pass"] = bool(result["pass"])
    print(json.dumps(result, default=gio._json_default))
    if args.out is not None:
        gio.atomic_write_text(args.out, gio.format_json(result))
    return EXIT_OK if result["pass"] else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"generate": cmd_generate, "infer": cmd_infer, "sweep": cmd_sweep, "verify": cmd_verify}[args.command]
    return handler(args, parser)


if __name__ == "__main__":
    sys.exit(main())
