"""Command-line entry point with machine-first, seed-deterministic output.

Every run logs its resolved configuration as one JSON line to stderr.
Exit codes: 0 success, 1 domain/value error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys

from . import analysis, baker, beta_shift, derived, transversality
from .digits import EPWord


def _log_config(args: argparse.Namespace):
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    cfg["subcommand"] = args.func.__name__.lstrip("_")
    cfg["baker_threads"] = int(os.environ.get("BAKER_THREADS", "0"))
    print(json.dumps(cfg, sort_keys=True, default=str), file=_sys.stderr)


def _cmd_expand(args, out):
    digits = beta_shift.greedy_expansion(args.x, args.beta, args.depth)
    print(",".join(map(str, digits)), file=out)


def _cmd_solve_beta(args, out):
    beta, _ = beta_shift.solve_beta(EPWord.parse(args.word))
    print(f"beta={beta:.6f} inv_beta={1.0 / beta:.6f}", file=out)


def _cmd_derive(args, out):
    w = EPWord.parse(args.word)
    if args.chain:
        outcome = derived.derivability_status(w, args.max_steps)
        for step_word in outcome.steps:
            print(step_word, file=out)
        print(f"status={outcome.status.value} reason={outcome.reason}", file=out)
    else:
        print(derived.derive(w), file=out)


def _cmd_s_table(args, out):
    print("n,beta,inv_beta", file=out)
    for n in range(1, args.n_max + 1):
        beta, _ = beta_shift.solve_beta(derived.beta_n_word(n))
        print(f"{n},{beta:.6f},{1.0 / beta:.6f}", file=out)


def _cmd_epsilon(args, out):
    eps = transversality.epsilon_bound(args.beta)
    ok = transversality.check_epsilon_condition(args.beta, eps)
    print(json.dumps({"beta": args.beta, "epsilon": eps,
                      "condition_holds": ok}), file=out)


def _cmd_verify_trans(args, out):
    _, sys_ = beta_shift.solve_beta(EPWord.parse(args.beta_word))
    eps = args.epsilon if args.epsilon is not None \
        else transversality.epsilon_bound(sys_.beta)
    box_log = [] if args.boxes_csv else None
    if args.delta is None:
        found = transversality.find_delta(
            sys_, eps, args.depth,
            transversality.Certified(args.max_boxes))
        if found is None:
            print(json.dumps({"status": "NoDeltaFound"}), file=out)
            return
        _, report = found
    elif args.mode == "cert":
        report = transversality.verify_transversality(
            sys_, eps, args.delta, args.depth,
            transversality.Certified(args.max_boxes), box_log=box_log)
    else:
        report = transversality.verify_transversality(
            sys_, eps, args.delta, args.depth,
            transversality.Randomized(args.samples, args.seed))
    print(json.dumps(report.to_dict()), file=out)
    if args.boxes_csv and box_log is not None:
        with open(args.boxes_csv, "w") as fh:
            fh.write("prefix_depth,x_lo,x_hi,rule\n")
            for m, xlo, xhi, rule in box_log:
                fh.write(f"{m},{xlo:.17g},{xhi:.17g},{rule}\n")


def _cmd_attractor(args, out):
    cloud = baker.srb_sample(args.beta, args.lam, args.seed,
                             args.burn_in, args.count)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(baker.cloud_to_csv(cloud))
    if args.pgm or args.png:
        raster = baker.rasterize(cloud, args.width, args.height)
        if args.pgm:
            with open(args.pgm, "wb") as fh:
                fh.write(baker.raster_to_pgm(raster))
        if args.png:
            from PIL import Image
            peak = max(int(raster.counts.max()), 1)
            pixels = (raster.counts * 255 // peak).astype("uint8")
            Image.fromarray(pixels, mode="L").save(args.png)
    print(json.dumps({"points": len(cloud), **cloud.provenance}), file=out)


def _parse_scales(text):
    k1, k2 = text.split("..")
    return int(k1), int(k2)


def _cmd_dimension(args, out):
    cloud = baker.srb_sample(args.beta, args.lam, args.seed, count=args.count)
    k_min, k_max = _parse_scales(args.scales)
    est = analysis.box_dimension(cloud, k_min, k_max)
    print(json.dumps({
        "estimate": est.value, "formula_value": est.formula_value,
        "trivial_bound": est.trivial_bound, "fit_r2": est.fit_r2,
        "scales": list(est.scales_used), "counts": list(est.counts),
    }), file=out)


def _cmd_density(args, out):
    cloud = baker.srb_sample(args.beta, args.lam, args.seed, count=args.count)
    report = analysis.marginal_density(cloud, args.bins)
    print(json.dumps({
        "bins": report.bins, "max_over_mean": list(report.max_over_mean),
        "verdict_hint": report.verdict_hint,
    }), file=out)


def _cmd_cylinders(args, out):
    cloud = baker.srb_sample(args.beta, args.lam, args.seed, count=args.count)
    exponent, fitted_k, masses = analysis.cylinder_decay(
        cloud, args.beta, args.n_max)
    print("n,max_mass,bound_K_beta_pow", file=out)
    for n, mass in enumerate(masses, start=1):
        bound = fitted_k * args.beta ** -n
        print(f"{n},{mass:.17g},{bound:.17g}", file=out)
    print(f"# fitted_exponent={exponent:.17g} fitted_K={fitted_k:.17g}",
          file=out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betabaker",
        description="beta-expansions, transversality certification and "
                    "baker-like skew-product simulation")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("expand", _cmd_expand, help="greedy beta-expansion digits")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--depth", type=int, default=16)

    p = add("solve-beta", _cmd_solve_beta,
            help="solve 1 = phi_beta(word) for beta")
    p.add_argument("--word", required=True, help="digit word as pre;per")

    p = add("derive", _cmd_derive, help="run-length derived word")
    p.add_argument("--word", required=True, help="digit word as pre;per")
    p.add_argument("--chain", action="store_true",
                   help="print the whole derivation chain and its status")
    p.add_argument("--max-steps", type=int, default=derived.DEFAULT_MAX_STEPS)

    p = add("s-table", _cmd_s_table,
            help="CSV of the beta_n family and reciprocals")
    p.add_argument("--n-max", type=int, default=5)

    p = add("epsilon", _cmd_epsilon, help="closed-form epsilon bound")
    p.add_argument("--beta", type=float, required=True)

    p = add("verify-trans", _cmd_verify_trans,
            help="verify transversality for a solved beta system")
    p.add_argument("--beta-word", required=True, help="d(1,beta) as pre;per")
    p.add_argument("--delta", type=float, default=None,
                   help="level to verify; omitted = search the delta grid")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--depth", type=int, default=25)
    p.add_argument("--mode", choices=("rand", "cert"), default="cert")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--max-boxes", type=int, default=5_000_000)
    p.add_argument("--boxes-csv", default=None,
                   help="dump discharged boxes to this CSV (cert mode)")

    def sim_args(p, count):
        p.add_argument("--beta", type=float, required=True)
        p.add_argument("--lambda", type=float, required=True, dest="lam")
        p.add_argument("--count", type=int, default=count)
        p.add_argument("--seed", type=int, default=0)

    p = add("attractor", _cmd_attractor, help="sample and render the attractor")
    sim_args(p, 100_000)
    p.add_argument("--burn-in", type=int, default=1000)
    p.add_argument("--pgm", default=None, help="write a P5 raster here")
    p.add_argument("--png", default=None, help="write a PNG raster here")
    p.add_argument("--csv", default=None, help="write points as CSV here")
    p.add_argument("--width", type=int, default=512)
    p.add_argument("--height", type=int, default=512)

    p = add("dimension", _cmd_dimension, help="box-counting dimension")
    sim_args(p, 1_000_000)
    p.add_argument("--scales", default="3..7", help="dyadic exponents k1..k2")

    p = add("density", _cmd_density, help="x-marginal density diagnostic")
    sim_args(p, 200_000)
    p.add_argument("--bins", type=int, default=256)

    p = add("cylinders", _cmd_cylinders, help="cylinder mass decay fit")
    sim_args(p, 200_000)
    p.add_argument("--n-max", type=int, default=8)

    return parser


def run(argv=None, out=_sys.stdout) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    _log_config(args)
    try:
        args.func(args, out)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=_sys.stderr)
        return 1
    return 0


def main():  # console script entry point
    raise SystemExit(run())


if __name__ == "__main__":
    main()
