"""Command-line front end.

Subcommands: ``moments``, ``qfi``, ``sweep``, ``optimize``, ``ratio`` and
``validate``.  Each reads an optional JSON config (``--config``, or
``--preset`` for a bundled one) and applies long-form flag overrides.

Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence,
4 validation failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from typing import List, Optional

from . import __version__
from .config import RunConfig, apply_overrides, load_config, shipped_config
from .errors import ConfigError, CutoffTooSmall, InvalidParams, MetrologyError, NoFiniteValue, NotConverged
from .states import build_coherent_state, moments

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_VALIDATION = 0, 2, 3, 4


def _phi_l(text: str):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or radians, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="JSON run configuration")
    g.add_argument("--preset", help="bundled configuration name, e.g. fig2_gha")
    s = p.add_argument_group("state")
    s.add_argument("--kind", choices=["gha", "su11"])
    s.add_argument("--zeta-re", type=float)
    s.add_argument("--zeta-im", type=float)
    for name in ("a", "k", "d", "e"):
        s.add_argument(f"--{name}", type=float)
    s.add_argument("--r", type=float, help="constant r in [0, 1] of the parameter admissibility inequality")
    s.add_argument("--tail-tol", type=float)
    i = p.add_argument_group("interferometer")
    i.add_argument("--kappa", type=float, help="first beam-splitter angle (radians)")
    i.add_argument("--kappa-prime", type=float, help="second beam-splitter angle (radians)")
    i.add_argument("--transmission", type=float, help="|t|^2 of the first beam splitter; sets --kappa")
    i.add_argument("--transmission-prime", type=float, help="|t'|^2 of the second beam splitter")
    i.add_argument("--homodyne-kappa", type=float)
    i.add_argument("--homodyne-kappa-prime", type=float)
    i.add_argument("--phi", type=float, help="internal phase for non-phase sweeps")
    i.add_argument("--scenario", choices=["b", "c"])
    i.add_argument("--phi-l", type=_phi_l, help="local-oscillator phase: 'auto' or radians")
    i.add_argument("--eta", type=float, help="detection efficiency in (0, 1]")
    w = p.add_argument_group("sweep and output")
    w.add_argument("--sweep", choices=["phi", "kappa", "zeta_abs", "transmission"])
    w.add_argument("--start", type=float)
    w.add_argument("--stop", type=float)
    w.add_argument("--steps", type=int)
    w.add_argument("--out", help="output file (default: stdout)")
    w.add_argument("--format", choices=["csv", "json"])
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcsmetro",
        description="Phase sensitivity and quantum Fisher information of deformed coherent states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    m = sub.add_parser("moments", parents=[common], help="single-mode moments of the input state")
    m.add_argument("--dump-coeffs", metavar="CSV", help="write m,re_alpha,im_alpha,prob")
    sub.add_parser("qfi", parents=[common], help="QFIs and QCRBs versus kappa or |t|^2")
    sub.add_parser("sweep", parents=[common], help="sensitivities and bounds versus the swept variable")
    o = sub.add_parser("optimize", parents=[common], help="optimal working phase of one scheme")
    o.add_argument("--scheme", choices=["difference", "single", "homodyne_b", "homodyne_c"])
    o.add_argument("--grid", type=int, default=721)
    r = sub.add_parser("ratio", parents=[common], help="optimised GHA / su(1,1) sensitivity ratios")
    r.add_argument("--numerator-kind", choices=["gha", "su11"])
    r.add_argument("--denominator-kind", choices=["gha", "su11"])
    r.add_argument("--grid", type=int, default=721)
    v = sub.add_parser("validate", parents=[common], help="closed forms against the Fock-space oracle")
    v.add_argument("--cutoff", type=int, help="oracle cutoff per mode (default: state cutoff + 2)")
    v.add_argument("--tol", type=float, default=1e-8)
    return parser


def _resolve_config(args) -> RunConfig:
    if args.config and args.preset:
        raise ConfigError("--config and --preset are mutually exclusive")
    if args.config:
        cfg = load_config(args.config)
    elif args.preset:
        cfg = load_config(shipped_config(args.preset))
    else:
        cfg = RunConfig()
    over = {k: v for k, v in vars(args).items() if v is not None}
    cfg = apply_overrides(cfg, **over)
    if args.command == "qfi" and args.sweep is None and cfg.sweep.variable == "phi":
        cfg = replace(cfg, sweep=replace(cfg.sweep, variable="transmission", start=0.0, stop=1.0))
    if args.command == "ratio":
        kinds = list(cfg.ratio_kinds)
        if args.numerator_kind:
            kinds[0] = args.numerator_kind
        if args.denominator_kind:
            kinds[1] = args.denominator_kind
        cfg = replace(cfg, ratio_kinds=tuple(kinds))
    return cfg.validate()


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _num(v: float) -> str:
    return format(v, ".17g") if math.isfinite(v) else ""


def _json_num(v):
    return v if isinstance(v, float) and math.isfinite(v) else (None if isinstance(v, float) else v)


def _records(records: List[dict], fmt: str) -> str:
    if fmt == "json":
        clean = [{k: _json_num(v) for k, v in r.items()} for r in records]
        return json.dumps(clean if len(clean) != 1 else clean[0], indent=1) + "\n"
    keys = list(records[0])
    lines = [",".join(keys)]
    for r in records:
        lines.append(",".join(_num(v) if isinstance(v, float) else str(v) for v in r.values()))
    return "\n".join(lines) + "\n"


def cmd_moments(cfg: RunConfig, args) -> int:
    st = cfg.state
    state = build_coherent_state(st.kind, st.zeta, st.params, st.tail_tol)
    mm = moments(state)
    rec = {
        "kind": state.kind.value,
        "mean_n": mm.mean_n,
        "var_n": mm.var_n,
        "re_b": mm.exp_b.real,
        "im_b": mm.exp_b.imag,
        "re_b2": mm.exp_b2.real,
        "im_b2": mm.exp_b2.imag,
        "re_nb": mm.exp_nb.real,
        "im_nb": mm.exp_nb.imag,
        "normalization": state.normalization,
        "cutoff": state.cutoff,
        "tail_bound": state.tail_bound,
    }
    _emit(_records([rec], cfg.output.format), cfg.output.path)
    if args.dump_coeffs:
        lines = ["m,re_alpha,im_alpha,prob"]
        for m, c in enumerate(state.coeffs):
            lines.append(f"{m},{_num(c.real)},{_num(c.imag)},{_num(abs(c) ** 2)}")
        _emit("\n".join(lines) + "\n", args.dump_coeffs)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, args) -> int:
    from .sweep import format_rows, run_sweep

    _emit(format_rows(run_sweep(cfg), cfg.output.format), cfg.output.path)
    return EXIT_OK


def cmd_optimize(cfg: RunConfig, args) -> int:
    from .sweep import optimize_scheme

    phi, val = optimize_scheme(cfg, cfg.scheme, n_grid=args.grid)
    rec = {"scheme": cfg.scheme, "phi_opt": phi, "dphi_min": val}
    _emit(_records([rec], cfg.output.format), cfg.output.path)
    return EXIT_OK


def cmd_ratio(cfg: RunConfig, args) -> int:
    from .sweep import ratio_report

    rep = ratio_report(cfg, n_grid=args.grid)
    num, den = cfg.ratio_kinds
    recs = [
        {"scheme": s, "kind_num": num, "phi_num": e["phi_num"], "dphi_num": e["dphi_num"], "kind_den": den,
         "phi_den": e["phi_den"], "dphi_den": e["dphi_den"], "ratio": e["ratio"]}
        for s, e in rep.items()
    ]
    _emit(_records(recs, cfg.output.format), cfg.output.path)
    return EXIT_OK


def cmd_validate(cfg: RunConfig, args) -> int:
    from .validation import run_validation

    st = cfg.state
    rep = run_validation(zeta=st.zeta, params=st.params, tail_tol=st.tail_tol, cutoff=args.cutoff, tol=args.tol)
    _emit(rep.table() + "\n", cfg.output.path)
    if not rep.passed:
        failing = [q for q, v in rep.worst.items() if not v < rep.tol]
        print(f"validation failed for {', '.join(failing)}; worst offender {rep.worst_offender} "
              f"(|delta| = {rep.worst[rep.worst_offender]:.3e} at {rep.where[rep.worst_offender]})", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


_COMMANDS = {"moments": cmd_moments, "qfi": cmd_sweep, "sweep": cmd_sweep, "optimize": cmd_optimize,
             "ratio": cmd_ratio, "validate": cmd_validate}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        return _COMMANDS[args.command](cfg, args)
    except (ConfigError, InvalidParams, CutoffTooSmall, ValueError) as exc:
        print(f"gcsmetro: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NotConverged, NoFiniteValue) as exc:
        print(f"gcsmetro: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except MetrologyError as exc:
        print(f"gcsmetro: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
