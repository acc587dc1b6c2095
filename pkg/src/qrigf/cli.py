"""Command-line front end.

Subcommands: eval, residual, past, divergences, sample, estimate,
simulate, figure, prostate.  Models are named with a small grammar,
``family:param,param``; a pair is either a shorthand (``exp:2,1``,
``identity``, a distortion such as ``ph:2`` or ``po:0.5``) or two model
specs joined by '/'.  Results are printed to stdout or written as CSV
or JSON; numbers are serialised at full round-trip precision and single
functional values are printed with nine decimals.

Exit codes: 0 success, 2 usage error, 3 numeric error, 4 I/O error.
QIGF_SEED provides the default seed; flags override it.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import (
    DegenerateDensity,
    DivergentIntegral,
    DomainError,
    NoConvergence,
    ParamError,
    QrigfError,
    SupportMismatch,
    TooSmall,
    ZeroSpacing,
)
from .estimation import (
    empirical_Q3_sample,
    estimate_igf,
    estimate_kl,
    estimate_past,
    estimate_residual,
    order_sample,
    parzen_Q3,
    read_sample_file,
    sample_from_Q3,
    write_sample_file,
)
from .igf import divergence_panel, igf, igf_past, igf_residual
from .models import (
    ComposedModel,
    Exponential,
    Govindarajulu,
    ParetoI,
    ParetoII,
    Power,
    PowerPareto,
    compose,
    make_model,
)
from .semiparam import DistortionSpec, distortion_to_composed
from .simulate import SimScenario, run_simulation

USAGE_ERRORS = (ParamError, argparse.ArgumentTypeError)
NUMERIC_ERRORS = (DivergentIntegral, NoConvergence, ZeroSpacing,
                  DegenerateDensity, DomainError, SupportMismatch, TooSmall)

FAMILY_ALIASES = {
    "exp": "exponential",
    "exponential": "exponential",
    "pareto1": "pareto1",
    "pareto2": "pareto2",
    "power": "power",
    "powerpareto": "powerpareto",
    "gov": "govindarajulu",
    "govindarajulu": "govindarajulu",
    "lhq": "lhq",
    "recipexp": "recipexp",
}

# fitted constants of the prostate-trial arms (placebo, 5 mg)
PROSTATE_SIGMA = 69.26
PROSTATE_BETA = 1.04
PROSTATE_B1 = 74.13
PROSTATE_B2 = 1.0 / 0.17

# configurations for the generating-function-versus-alpha figure; chosen
# so the series is strictly monotone on the emitted alpha grid
FIGURE1_CONFIGS = (
    (1.0, 1.0, 1.0, 1.0, 1.0),
    (2.0, 1.0, 0.5, 4.0, 1.0),
    (0.8, 1.0, 0.75, 2.0, 1.0),
)
FIGURE1_ALPHAS = tuple(round(0.10 + 0.05 * i, 2) for i in range(18))  # 0.10..0.95


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise ParamError(f"expected comma-separated numbers, got {text!r}")


def parse_model(spec: str):
    """family:param,param -> QuantileModel."""
    name, _, rest = spec.partition(":")
    family = FAMILY_ALIASES.get(name.strip().lower())
    if family is None:
        raise ParamError(f"unknown model family {name!r}")
    return make_model(family, _parse_floats(rest))


def parse_pair(spec: str, cfg: EvalConfig = DEFAULT_CONFIG) -> ComposedModel:
    """Pair grammar: 'identity', a distortion (ph:T, po:R, pocdf:T,
    rph:C), a same-family shorthand (exp:L1,L2; pareto1:G1,G2;
    pareto2:B1,B2), or 'model1/model2'."""
    text = spec.strip()
    if text == "identity":
        return compose(Power(1.0, 1.0), Power(1.0, 1.0), cfg)
    if "/" in text:
        left, right = text.split("/", 1)
        return compose(parse_model(left), parse_model(right), cfg)
    name, _, rest = text.partition(":")
    key = name.strip().lower()
    distortions = {"ph": "ph", "po": "po_survival", "pocdf": "po_cdf",
                   "rph": "reversed_ph"}
    if key in distortions:
        values = _parse_floats(rest)
        if len(values) != 1:
            raise ParamError(f"{key} takes exactly one constant")
        return distortion_to_composed(
            DistortionSpec(distortions[key], theta=values[0]), cfg)
    pairs = {"exp": Exponential, "exponential": Exponential,
             "pareto1": ParetoI, "pareto2": ParetoII}
    if key in pairs:
        values = _parse_floats(rest)
        if len(values) != 2:
            raise ParamError(f"pair shorthand {key} takes two parameters")
        cls = pairs[key]
        return compose(cls(values[0]), cls(values[1]), cfg)
    raise ParamError(
        f"cannot parse pair {spec!r}; use 'identity', a distortion "
        f"(ph:T, po:R, pocdf:T, rph:C), 'exp:L1,L2', 'pareto1:G1,G2', "
        f"'pareto2:B1,B2' or 'model1/model2'")


def _eval_config(args) -> EvalConfig:
    overrides = {}
    for name in ("quad_rel_tol", "quad_abs_tol", "endpoint_eps",
                 "root_tol", "fd_step", "max_subdivisions"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    return EvalConfig(**overrides) if overrides else DEFAULT_CONFIG


def _default_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    return int(os.environ.get("QIGF_SEED", "0"))


def _write_rows(rows, columns, out, fmt):
    """Rows of dicts -> CSV ('.17g' numbers) or JSON, to path or stdout."""
    def render(fh):
        if fmt == "json":
            json.dump(rows, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for row in rows:
                writer.writerow([
                    format(row[c], ".17g") if isinstance(row[c], float)
                    else ("" if row[c] is None else row[c])
                    for c in columns
                ])

    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            render(fh)
    else:
        render(sys.stdout)


def _print_value(value: float):
    print(f"{value:.9f}")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    cfg = _eval_config(args)
    model = parse_pair(args.pair, cfg)
    alphas = args.alphas if args.alphas else [args.alpha]
    rows = []
    for a in alphas:
        value = igf(model, a, cfg, args.method)
        rows.append({"alpha": a, "value": value.value,
                     "method": value.method})
        if not args.out:
            _print_value(value.value)
    if args.out:
        _write_rows(rows, ("alpha", "value", "method"), args.out, args.format)
    return 0


def _truncated(args, which) -> int:
    cfg = _eval_config(args)
    model = parse_pair(args.pair, cfg)
    us = args.u_grid if args.u_grid else [args.u]
    fn = igf_residual if which == "residual" else igf_past
    rows = []
    for u in us:
        value = fn(model, args.alpha, u, cfg, args.method)
        rows.append({"alpha": args.alpha, "u": u, "value": value.value,
                     "method": value.method})
        if not args.out:
            _print_value(value.value)
    if args.out:
        _write_rows(rows, ("alpha", "u", "value", "method"),
                    args.out, args.format)
    return 0


def cmd_residual(args) -> int:
    return _truncated(args, "residual")


def cmd_past(args) -> int:
    return _truncated(args, "past")


def cmd_divergences(args) -> int:
    cfg = _eval_config(args)
    model = parse_pair(args.pair, cfg)
    panel = divergence_panel(model, args.renyi, cfg)
    rows = [{"measure": "kl", "value": panel.kl},
            {"measure": "hellinger", "value": panel.hellinger},
            {"measure": "bhattacharyya", "value": panel.bhattacharyya}]
    rows += [{"measure": f"renyi_{a:g}", "value": v}
             for a, v in panel.renyi.items()]
    _write_rows(rows, ("measure", "value"), args.out, args.format)
    return 0


def cmd_sample(args) -> int:
    cfg = _eval_config(args)
    model = parse_pair(args.pair, cfg)
    seed = _default_seed(args)
    sample = sample_from_Q3(model, args.n, seed)
    write_sample_file(args.out, sample.z,
                      header=f"pair={args.pair} n={args.n} seed={seed}")
    return 0


def cmd_estimate(args) -> int:
    if args.input2:
        x1 = read_sample_file(args.input)
        x2 = read_sample_file(args.input2)
        sample = empirical_Q3_sample(x1, x2)
    else:
        sample = order_sample(read_sample_file(args.input), source="file")
    if args.kind == "igf":
        report = estimate_igf(sample, args.alpha)
    elif args.kind == "kl":
        report = estimate_kl(sample)
    else:
        if args.u is None:
            raise ParamError(f"--u is required for kind={args.kind}")
        fn = estimate_residual if args.kind == "residual" else estimate_past
        report = fn(sample, args.alpha, args.u)
    if args.out:
        rows = [{"kind": report.kind, "alpha": report.alpha, "u": report.u,
                 "n": report.n, "estimate": report.estimate}]
        _write_rows(rows, ("kind", "alpha", "u", "n", "estimate"),
                    args.out, args.format)
    else:
        _print_value(report.estimate)
    return 0


def cmd_simulate(args) -> int:
    cfg = _eval_config(args)
    model = parse_pair(args.pair, cfg)
    override = {}
    for item in args.truth or ():
        key, _, value = item.partition("=")
        if not value:
            raise ParamError(f"--truth expects KEY=VALUE, got {item!r}")
        override[None if key == "igf" else float(key)] = float(value)
    scenario = SimScenario(
        model=model,
        alpha=args.alpha,
        u_list=tuple(args.u or ()),
        n_list=tuple(args.n_list),
        reps=args.reps,
        base_seed=_default_seed(args),
        truth_cfg=cfg,
        truth_override=override or None,
    )
    result = run_simulation(scenario)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            result.to_csv(fh)
    else:
        result.to_csv(sys.stdout)
    if result.redraws:
        print(f"# redraws: {result.redraws}", file=sys.stderr)
    return 0


def _figure_igf_vs_alpha(cfg):
    rows = []
    for c, l1, l2, b1, b2 in FIGURE1_CONFIGS:
        label = f"powerpareto:{c:g},{l1:g},{l2:g}/power:{b1:g},{b2:g}"
        model = compose(PowerPareto(c, l1, l2), Power(b1, b2), cfg)
        for a in FIGURE1_ALPHAS:
            rows.append({"x": a, "y": igf(model, a, cfg).value,
                         "series": label})
    return rows, ("x", "y", "series")


def _figure_residual_surface(cfg):
    model = compose(make_model("lhq", [0.1, 0.2]),
                    Exponential(1.0 / 0.6), cfg)
    rows = []
    for a in (0.25, 0.5, 0.75, 1.25, 1.5):
        for u in np.round(np.arange(0.05, 0.951, 0.05), 10):
            rows.append({"x": float(u),
                         "y": igf_residual(model, a, float(u), cfg).value,
                         "series": f"alpha={a:g}"})
    return rows, ("x", "y", "series")


def _figure_past_gov_recipexp(cfg):
    rows = []
    for lam in (0.4, 0.7, 1.0, 1.5):
        model = compose(Govindarajulu(1.0, 1.0),
                        make_model("recipexp", [lam]), cfg)
        for u in np.round(np.arange(0.05, 0.951, 0.05), 10):
            rows.append({"x": float(u),
                         "y": igf_past(model, 0.5, float(u), cfg).value,
                         "series": f"lam={lam:g}"})
    return rows, ("x", "y", "series")


def _figure_past_po(cfg):
    rows = []
    for theta in (0.25, 0.5, 2.0, 4.0):
        model = distortion_to_composed(DistortionSpec("po_cdf", theta=theta), cfg)
        for u in np.round(np.arange(0.05, 0.951, 0.05), 10):
            rows.append({"x": float(u),
                         "y": igf_past(model, 0.7, float(u), cfg).value,
                         "series": f"theta={theta:g}"})
    return rows, ("x", "y", "series")


FIGURES = {
    "igf-vs-alpha": _figure_igf_vs_alpha,
    "residual-surface": _figure_residual_surface,
    "past-gov-recipexp": _figure_past_gov_recipexp,
    "past-po": _figure_past_po,
}


def cmd_figure(args) -> int:
    cfg = _eval_config(args)
    rows, columns = FIGURES[args.which](cfg)
    _write_rows(rows, columns, args.out, args.format)
    return 0


def prostate_model(cfg: EvalConfig = DEFAULT_CONFIG) -> ComposedModel:
    """Fitted placebo arm (Govindarajulu) against the 5 mg arm (power)."""
    return compose(Govindarajulu(PROSTATE_SIGMA, PROSTATE_BETA),
                   Power(PROSTATE_B1, PROSTATE_B2), cfg)


def cmd_prostate(args) -> int:
    cfg = _eval_config(args)
    seed = _default_seed(args)
    model = prostate_model(cfg)
    sample = sample_from_Q3(model, args.n, seed)

    def np_panel(s):
        i_half = estimate_igf(s, 0.5).estimate
        panel = {
            "kl": estimate_kl(s).estimate,
            "hellinger": 1.0 - i_half,
            "bhattacharyya": -math.log(i_half),
        }
        for a in (0.25, 0.5, 0.75):
            panel[f"renyi_{a:g}"] = (
                math.log(estimate_igf(s, a).estimate) / (a - 1.0))
        return panel

    columns = ["measure", "placebo_vs_5mg"]
    table = {k: {"measure": k, "placebo_vs_5mg": v}
             for k, v in np_panel(sample).items()}
    if args.arm2:
        arm2 = parse_model(args.arm2)
        model2 = compose(Govindarajulu(PROSTATE_SIGMA, PROSTATE_BETA), arm2, cfg)
        sample2 = sample_from_Q3(model2, args.n, seed)
        label = f"placebo_vs_{args.arm2}"
        columns.append(label)
        for k, v in np_panel(sample2).items():
            table[k][label] = v
    _write_rows(list(table.values()), tuple(columns), args.out, args.format)

    if args.figures_prefix:
        prefix = args.figures_prefix
        ugrid = np.round(np.linspace(0.005, 1.0, 200), 10)
        rows = [{"u": float(u), "parametric": float(model.Q3(u)),
                 "nonparametric": float(parzen_Q3(sample, u))}
                for u in ugrid]
        _write_rows(rows, ("u", "parametric", "nonparametric"),
                    f"{prefix}_q3.csv", "csv")
        agrid = [round(0.05 * k, 10) for k in range(1, 20)]
        rows = []
        for a in agrid:
            rows.append({"alpha": a,
                         "parametric": igf(model, a, cfg).value,
                         "nonparametric": estimate_igf(sample, a).estimate})
        _write_rows(rows, ("alpha", "parametric", "nonparametric"),
                    f"{prefix}_igf.csv", "csv")
        ugrid = np.round(np.arange(0.02, 0.981, 0.02), 10)
        rows = [{"u": float(u), "alpha": a,
                 "estimate": estimate_residual(sample, a, float(u)).estimate}
                for a in (0.25, 0.5, 0.75) for u in ugrid]
        _write_rows(rows, ("u", "alpha", "estimate"),
                    f"{prefix}_residual.csv", "csv")
        rows = [{"u": float(u), "alpha": a,
                 "estimate": estimate_past(sample, a, float(u)).estimate}
                for a in (0.25, 0.5, 0.75) for u in ugrid]
        _write_rows(rows, ("u", "alpha", "estimate"),
                    f"{prefix}_past.csv", "csv")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sub, pair=True):
    if pair:
        sub.add_argument("--pair", required=True,
                         help="pair/distortion spec, e.g. exp:2,1 or ph:2 "
                              "or govindarajulu:1,1/recipexp:0.7")
    sub.add_argument("--out", help="write results to this file")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    for name in ("quad-rel-tol", "quad-abs-tol", "endpoint-eps",
                 "root-tol", "fd-step"):
        sub.add_argument(f"--{name}", dest=name.replace("-", "_"),
                         type=float, default=None, help=argparse.SUPPRESS)
    sub.add_argument("--max-subdivisions", dest="max_subdivisions",
                     type=int, default=None, help=argparse.SUPPRESS)


def _comma_floats(text):
    return _parse_floats(text)


def _comma_ints(text):
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise ParamError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrigf",
        description="Quantile-domain relative information generating "
                    "functions: evaluation, estimation, simulation, reports.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eval", help="evaluate the generating function")
    _add_common(p)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--alphas", type=_comma_floats, default=None,
                   help="comma-separated alpha grid")
    p.add_argument("--method", choices=("auto", "closed", "quadrature"),
                   default="auto")
    p.set_defaults(func=cmd_eval)

    for name, helptext in (("residual", "residual-lifetime version"),
                           ("past", "past-lifetime version")):
        p = subs.add_parser(name, help=helptext)
        _add_common(p)
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--u", type=float, default=None)
        p.add_argument("--u-grid", dest="u_grid", type=_comma_floats,
                       default=None)
        p.add_argument("--method", choices=("auto", "closed", "quadrature"),
                       default="auto")
        p.set_defaults(func=cmd_residual if name == "residual" else cmd_past)

    p = subs.add_parser("divergences", help="K-L/Hellinger/Bhattacharyya/Renyi")
    _add_common(p)
    p.add_argument("--renyi", type=_comma_floats, default=[0.25, 0.5, 0.75])
    p.set_defaults(func=cmd_divergences)

    p = subs.add_parser("sample", help="draw a seeded sample of the distortion")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_sample)

    p = subs.add_parser("estimate", help="estimate functionals from a sample file")
    _add_common(p, pair=False)
    p.add_argument("--input", required=True,
                   help="sample file (unit-interval Z values), or the first "
                        "raw sample when --input2 is given")
    p.add_argument("--input2", default=None,
                   help="second raw sample (two-sample mode)")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--kind", choices=("igf", "residual", "past", "kl"),
                   default="igf")
    p.add_argument("--u", type=float, default=None)
    p.set_defaults(func=cmd_estimate)

    p = subs.add_parser("simulate", help="bias/MSE study of the estimators")
    _add_common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--u", type=_comma_floats, default=None,
                   help="residual truncation points")
    p.add_argument("--n-list", dest="n_list", type=_comma_ints,
                   default=[50, 100, 250, 500])
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--truth", action="append", default=None,
                   metavar="KEY=VALUE",
                   help="override the quadrature truth for a target: "
                        "KEY is 'igf' or a u value")
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("figure", help="emit plot-ready series data")
    _add_common(p, pair=False)
    p.add_argument("--which", choices=sorted(FIGURES), required=True)
    p.set_defaults(func=cmd_figure)

    p = subs.add_parser("prostate",
                        help="clinical-trial analysis with the fitted arms")
    _add_common(p, pair=False)
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--figures-prefix", dest="figures_prefix", default=None,
                   help="also write <prefix>_{q3,igf,residual,past}.csv")
    p.add_argument("--arm2", default=None,
                   help="model spec for a second comparison arm "
                        "(adds a column to the table)")
    p.set_defaults(func=cmd_prostate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "eval" and args.alpha is None and not args.alphas:
        parser.error("eval requires --alpha or --alphas")
    if args.command in ("residual", "past") and args.u is None and not args.u_grid:
        parser.error(f"{args.command} requires --u or --u-grid")
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2
    except NUMERIC_ERRORS as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error[OSError]: {exc}", file=sys.stderr)
        return 4
    except QrigfError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
