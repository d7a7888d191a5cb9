"""Command-line front end.

Sweeps write CSV (12 significant digits, '\\n' line endings); single-point
commands write JSON.  Exit status: 0 success, 2 usage error, 3 internal
consistency violation.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import engine, infotheory, model
from .engine import DemonMode
from .errors import ParameterError, QRatchetError
from .ratchetmc import McConfig, run

EXIT_USAGE = 2
EXIT_INCONSISTENT = 3

FIG2_BETAS = (1.0, 2.0, 10.0)
FIG2_LAMBDAS = (0.2, 0.3, 0.4)


class UsageError(Exception):
    pass


class InconsistencyError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    variable: str  # "lambda" or "beta"
    start: float
    stop: float
    steps: int
    omega: float = 1.0

    def __post_init__(self):
        if self.variable not in ("lambda", "beta"):
            raise UsageError(f"unknown sweep variable {self.variable!r}")
        if self.steps < 2:
            raise UsageError("steps must be >= 2")
        if not self.start < self.stop:
            raise UsageError("sweep start must be below stop")
        if self.variable == "lambda" and self.start < 0:
            raise UsageError("lambda range must be non-negative")
        if self.variable == "beta" and self.start <= 0:
            raise UsageError("beta range must be positive")
        if not self.omega > 0:
            raise UsageError("omega must be positive")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    return format(float(x), ".12g")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def fig2_po(spec: SweepSpec, betas=FIG2_BETAS) -> str:
    lams = spec.values()
    rows = []
    for beta in betas:
        if not beta > 0:
            raise UsageError("beta values must be positive")
        p_o = model._uncoupled_overall(spec.omega, lams, beta)
        po_m, po_p = model._uncoupled_given_state(lams, beta)
        rows += zip(lams, np.full_like(lams, beta), p_o, po_m, po_p)
    return _csv(["lambda", "beta", "p_o", "p_o_minus", "p_o_plus"], rows)


def fig2_teff(spec: SweepSpec, lambdas=FIG2_LAMBDAS) -> str:
    betas = spec.values()
    rows = []
    for lam in lambdas:
        if lam < 0:
            raise UsageError("lambda values must be non-negative")
        ratio = model._teff_ratio(spec.omega, lam, betas)
        if np.any(ratio < 1.0 - 1e-12):
            raise InconsistencyError("effective temperature ratio below 1")
        rows += zip(betas, np.full_like(betas, lam), ratio)
    return _csv(["beta", "lambda", "teff_ratio"], rows)


def fig2_work(spec: SweepSpec, lambdas=FIG2_LAMBDAS, modes=("random", "deterministic")) -> str:
    betas = spec.values()
    rows = []
    for lam in lambdas:
        if lam < 0:
            raise UsageError("lambda values must be non-negative")
        for mode in modes:
            led = engine.ratchet_ledger(spec.omega, lam, betas, mode)
            w = led["w_net"]
            if mode == "random" and np.any(w > engine.VIOLATION_TOL):
                raise InconsistencyError("random-mode ratchet produced net work")
            rows += zip(betas, np.full_like(betas, lam), [mode] * len(betas), led["ratchet_gain"], led["delta"], w)
    return _csv(["beta", "lambda", "mode", "ratchet_gain", "delta", "w_net"], rows)


def discord_report(params: model.EngineParams) -> dict:
    rho = model.thermal_state(params).rho
    z = infotheory.excess_entropy(rho, infotheory.Z_BASIS)
    d, basis = infotheory.discord(rho)
    if d > z.delta + 1e-10:
        raise InconsistencyError("discord exceeds the z-basis excess entropy")
    return {
        "params": {"omega": params.omega, "lambda": params.lam, "beta": params.beta},
        "s_joint": z.s_joint,
        "s_a": z.s_a,
        "s_b_given_a_z": z.s_b_given_a,
        "delta_z": z.delta,
        "discord": d,
        "theta": basis.theta,
        "phi": basis.phi,
    }


def cycle_report(params: model.EngineParams, delta_basis: str = "z") -> dict:
    out = {"params": {"omega": params.omega, "lambda": params.lam, "beta": params.beta}}
    for mode in DemonMode:
        rep = engine.ratchet_cycle(params, mode, delta_basis if mode is DemonMode.RANDOM else "z")
        verdict = engine.second_law_check(rep)
        if mode is DemonMode.RANDOM and verdict.violated:
            raise InconsistencyError("random-mode ratchet produced net work")
        out[mode.value] = dict(rep.to_dict(), violation=verdict.violated)
    out["delta_basis"] = delta_basis
    return out


def _floats(text: str):
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, newline="\n")


def _mc_config(args) -> McConfig:
    cfg = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}")
    params = dict(cfg.get("params", {}))
    if "lambda" in params:
        params["lam"] = params.pop("lambda")
    for flag, key in (("omega", "omega"), ("beta", "beta"), ("lam", "lam")):
        val = getattr(args, flag)
        if val is not None:
            params[key] = val
    top = {k: cfg[k] for k in ("n_boxes", "seed", "demon_mode", "chunk_size") if k in cfg}
    for flag, key in (("boxes", "n_boxes"), ("seed", "seed"), ("mode", "demon_mode"), ("chunk", "chunk_size")):
        val = getattr(args, flag)
        if val is not None:
            top[key] = val
    try:
        return McConfig(params=model.EngineParams(**params), **top)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc))


def _params(args) -> model.EngineParams:
    try:
        return model.EngineParams(omega=args.omega, lam=args.lam, beta=args.beta)
    except ParameterError as exc:
        raise UsageError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qratchet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker cap (speed only)")

    p = sub.add_parser("fig2-po", parents=[common], help="uncoupled probability vs lambda")
    p.add_argument("--betas", type=_floats, default=FIG2_BETAS)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--omega", type=float, default=1.0)

    for name, hlp in (("fig2-teff", "effective temperature ratio vs beta"), ("fig2-work", "net work vs beta")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--lambdas", type=_floats, default=FIG2_LAMBDAS)
        p.add_argument("--start", type=float, default=0.1)
        p.add_argument("--stop", type=float, default=10.0)
        p.add_argument("--steps", type=int, default=100)
        p.add_argument("--omega", type=float, default=1.0)
        if name == "fig2-work":
            p.add_argument("--mode", choices=["random", "deterministic", "both"], default="both")

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo run of the demon")
    p.add_argument("--config", help="JSON file with McConfig fields")
    p.add_argument("--beta", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--boxes", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=[m.value for m in DemonMode])
    p.add_argument("--chunk", type=int)
    p.add_argument("--dump", help="write the joint outcome record (QRMC format) here")

    for name, hlp in (("discord", "z-basis excess entropy and discord of rho_int"), ("cycle", "full ratchet ledger")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--beta", type=float, default=1.0)
        p.add_argument("--omega", type=float, default=1.0)
        p.add_argument("--lambda", dest="lam", type=float, default=0.5)
        if name == "cycle":
            p.add_argument("--delta-basis", choices=["z", "discord"], default="z")
    return parser


def _dispatch(args) -> int:
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    if args.command == "fig2-po":
        spec = SweepSpec("lambda", args.start, args.stop, args.steps, args.omega)
        _emit(fig2_po(spec, args.betas), args.out)
    elif args.command == "fig2-teff":
        spec = SweepSpec("beta", args.start, args.stop, args.steps, args.omega)
        _emit(fig2_teff(spec, args.lambdas), args.out)
    elif args.command == "fig2-work":
        spec = SweepSpec("beta", args.start, args.stop, args.steps, args.omega)
        modes = ("random", "deterministic") if args.mode == "both" else (args.mode,)
        _emit(fig2_work(spec, args.lambdas, modes), args.out)
    elif args.command == "mc":
        cfg = _mc_config(args)
        report = run(cfg, threads=args.threads, dump=args.dump)
        _emit(report.to_json(), args.out)
        if cfg.demon_mode is DemonMode.RANDOM and report.violation:
            print("second-law violation in random mode", file=sys.stderr)
            return EXIT_INCONSISTENT
    elif args.command == "discord":
        _emit(json.dumps(discord_report(_params(args)), indent=2, sort_keys=True) + "\n", args.out)
    elif args.command == "cycle":
        rep = cycle_report(_params(args), args.delta_basis)
        _emit(json.dumps(rep, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (InconsistencyError, QRatchetError) as exc:
        print(f"qratchet: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
