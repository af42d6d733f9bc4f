"""Command-line front end: scenarios, figure data, tuning, sweeps.

Configuration is a single JSON file; see the README for the full key
tree.  All commands emit flat CSV files meant for external plotting, and
identical configs produce byte-identical output (fixed-step integrators,
fixed number formatting).  Exit codes: 0 success, 2 configuration or
validation failure, 3 numerical failure (blow-up or norm drift), each
with a one-line reason on stderr.
"""

from __future__ import annotations

import argparse
import copy
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .chain import ChainParams, ChainTrace, default_dt, evolve, write_norms, write_snapshots
from .closedform import onresonance_pminus, target_to_zeromode
from .csvio import write_csv
from .errors import NumericalError, ValidationError
from .qubit import (
    Drive,
    ProbabilityTrace,
    QubitParams,
    integrate_tdse,
    make_drive,
    pulse_drive,
    solve_dxy_for_target,
    tune_dz,
    write_drive,
    write_trace,
)
from .solitons import SolitonSpec, initial_chain_state, make_soliton, write_profile

__all__ = [
    "ScenarioConfig",
    "SweepConfig",
    "main",
    "parse_scenario",
    "parse_sweep",
    "reproduce_figure",
    "run_scenario",
    "sweep",
    "tune_command",
]

_MAX_SNAPSHOT_FILES = 21
_REQUIRED = object()


@dataclass(frozen=True)
class WindowConfig:
    start: float = -8.0
    stop: float = 8.0
    units: str = "T"  # "T" scales by the transit time, "absolute" does not
    dt: float | None = None


@dataclass(frozen=True)
class TuningConfig:
    eta: float
    xi: float = 1.0
    p: int = 0
    sign: int = -1


@dataclass(frozen=True)
class EvolveConfig:
    t_final: float | None = None
    dt: float | None = None
    sample_every: int | None = None  # None: aim for _MAX_SNAPSHOT_FILES samples


@dataclass(frozen=True)
class ModelPulseConfig:
    shape: str
    omega_amp: float
    T: float
    delta: float = 0.0


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario: which drive to build and how to integrate it."""

    chain: ChainParams | None
    soliton: SolitonSpec | None
    qubit: QubitParams | None
    source: str  # "analytic" | "chain" | "model"
    mode: str  # "exact" | "taylor"
    window: WindowConfig
    tuning: TuningConfig | None
    evolve: EvolveConfig
    model: ModelPulseConfig | None
    out: str | None


@dataclass(frozen=True)
class SweepConfig:
    base: dict  # raw scenario tree, re-parsed per point
    param: str  # dotted key path, e.g. "qubit.dxy"
    start: float
    stop: float
    count: int
    reduction: str  # "final_pminus" | "max_pminus"


def _section(raw: dict, name: str, required: bool = True) -> dict | None:
    sec = raw.get(name)
    if sec is None:
        if required:
            raise ValidationError(f"config missing the '{name}' section")
        return None
    if not isinstance(sec, dict):
        raise ValidationError(f"config section '{name}' must be an object")
    return sec


def _field(sec: dict, name: str, key: str, cast=float, default=_REQUIRED):
    if key not in sec or sec[key] is None:
        if default is _REQUIRED:
            raise ValidationError(f"config missing {name}.{key}")
        return default
    try:
        return cast(sec[key])
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"config {name}.{key}: {exc}") from exc


def parse_scenario(raw: dict) -> ScenarioConfig:
    if not isinstance(raw, dict):
        raise ValidationError("scenario config must be a JSON object")
    drive = _section(raw, "drive", required=False) or {}
    source = drive.get("source", "analytic")
    if source not in ("analytic", "chain", "model"):
        raise ValidationError(f"drive.source must be 'analytic', 'chain' or 'model', got {source!r}")
    mode = drive.get("mode", "exact")
    if mode not in ("exact", "taylor"):
        raise ValidationError(f"drive.mode must be 'exact' or 'taylor', got {mode!r}")

    chain = soliton = qubit = model = None
    if source == "model":
        model = ModelPulseConfig(
            shape=_field(drive, "drive", "shape", str),
            omega_amp=_field(drive, "drive", "omega_amp"),
            T=_field(drive, "drive", "T"),
            delta=_field(drive, "drive", "delta", default=0.0),
        )
    else:
        c = _section(raw, "chain")
        chain = ChainParams(
            J=_field(c, "chain", "J"),
            A=_field(c, "chain", "A"),
            S=_field(c, "chain", "S"),
            N=_field(c, "chain", "N", int),
            dx=_field(c, "chain", "dx", default=1.0),
        )
        s = _section(raw, "soliton")
        soliton = make_soliton(
            chain,
            _field(s, "soliton", "kind", str),
            k=_field(s, "soliton", "k"),
            L=_field(s, "soliton", "L"),
            x0=_field(s, "soliton", "x0", default=0.0),
        )
        q = _section(raw, "qubit", required=False)
        if q is not None:
            qubit = QubitParams(
                dxy=_field(q, "qubit", "dxy"),
                dz=_field(q, "qubit", "dz"),
                mu=_field(q, "qubit", "mu"),
                nu=_field(q, "qubit", "nu"),
                H0=_field(q, "qubit", "H0"),
                xq=_field(q, "qubit", "xq", default=0.0),
            )

    w = _section(raw, "window", required=False) or {}
    window = WindowConfig(
        start=_field(w, "window", "start", default=-8.0),
        stop=_field(w, "window", "stop", default=8.0),
        units=_field(w, "window", "units", str, default="T"),
        dt=_field(w, "window", "dt", default=None),
    )
    if window.units not in ("T", "absolute"):
        raise ValidationError(f"window.units must be 'T' or 'absolute', got {window.units!r}")
    if not window.stop > window.start:
        raise ValidationError("window.stop must exceed window.start")

    t = _section(raw, "tuning", required=False)
    tuning = None
    if t is not None:
        tuning = TuningConfig(
            eta=_field(t, "tuning", "eta"),
            xi=_field(t, "tuning", "xi", default=1.0),
            p=_field(t, "tuning", "p", int, default=0),
            sign=_field(t, "tuning", "sign", int, default=-1),
        )

    e = _section(raw, "evolve", required=False) or {}
    evolve_cfg = EvolveConfig(
        t_final=_field(e, "evolve", "t_final", default=None),
        dt=_field(e, "evolve", "dt", default=None),
        sample_every=_field(e, "evolve", "sample_every", int, default=None),
    )
    out = raw.get("out")
    return ScenarioConfig(
        chain=chain,
        soliton=soliton,
        qubit=qubit,
        source=source,
        mode=mode,
        window=window,
        tuning=tuning,
        evolve=evolve_cfg,
        model=model,
        out=out,
    )


def _window_times(cfg: ScenarioConfig) -> tuple[float, float]:
    if cfg.window.units == "absolute":
        return cfg.window.start, cfg.window.stop
    T = cfg.model.T if cfg.source == "model" else (cfg.soliton.T if cfg.soliton else None)
    if T is None:
        raise ValidationError(
            "window in units of T needs a moving soliton; use window.units = 'absolute'"
        )
    return cfg.window.start * T, cfg.window.stop * T


def _tuned_qubit(cfg: ScenarioConfig) -> QubitParams:
    if cfg.qubit is None:
        raise ValidationError("scenario needs a 'qubit' section for this drive source")
    if cfg.tuning is None:
        return cfg.qubit
    tr = tune_dz(cfg.soliton, cfg.chain, cfg.qubit, cfg.tuning.eta)
    dxy = solve_dxy_for_target(cfg.tuning.xi, cfg.tuning.p, cfg.tuning.sign, cfg.soliton, cfg.chain.S)
    return replace(cfg.qubit, dz=tr.dz, dxy=dxy)


def _chain_samples(nsteps: int, requested: int | None, dense: bool) -> int:
    if requested is not None:
        return requested
    # dense traces feed drive interpolation and must resolve the envelope;
    # sparse ones only become snapshot files
    target = 4000 if dense else _MAX_SNAPSHOT_FILES - 1
    return max(1, nsteps // target)


def _run_chain(
    cfg: ScenarioConfig, t_i: float, t_f: float, dt: float | None, dense: bool = False
) -> ChainTrace:
    state = initial_chain_state(cfg.soliton, cfg.chain, t=t_i)
    dt = dt if dt is not None else (cfg.evolve.dt if cfg.evolve.dt is not None else default_dt(cfg.chain))
    nsteps = int(round((t_f - t_i) / dt))
    return evolve(
        state,
        cfg.chain,
        t_f,
        dt=dt,
        sample_every=_chain_samples(nsteps, cfg.evolve.sample_every, dense),
    )


def _scenario_compute(
    cfg: ScenarioConfig, dt: float | None = None
) -> tuple[ProbabilityTrace, Drive, ChainTrace | None]:
    """Shared core for run_scenario and sweep: integrate, return artifacts."""
    t_i, t_f = _window_times(cfg)
    ctrace = None
    if cfg.source == "model":
        drive = pulse_drive(cfg.model.shape, cfg.model.omega_amp, cfg.model.T, cfg.model.delta)
    elif cfg.source == "chain":
        # the chain must be integrated finely enough that the sampled
        # envelope resolves the transit; the chain step comes from the
        # evolve section, the qubit step from the window section
        q = _tuned_qubit(cfg)
        ctrace = _run_chain(cfg, t_i, t_f, None, dense=True)
        drive = make_drive(cfg.soliton, q, cfg.chain, ctrace, cfg.mode)
    else:
        q = _tuned_qubit(cfg)
        drive = make_drive(cfg.soliton, q, cfg.chain, "analytic", cfg.mode)
    qdt = dt if dt is not None else cfg.window.dt
    trace = integrate_tdse(drive, None, t_i, t_f, qdt)
    return trace, drive, ctrace


def _thin_trace(trace: ChainTrace, max_rows: int) -> ChainTrace:
    k = max(1, (trace.times.size - 1) // (max_rows - 1)) if max_rows > 1 else 1
    return ChainTrace(
        times=trace.times[::k], abs2=trace.abs2[::k], arg=trace.arg[::k], norms=trace.norms[::k]
    )


def run_scenario(cfg: ScenarioConfig, outdir: str | None = None, dt: float | None = None) -> dict:
    """Integrate one scenario and write trace.csv + drive.csv (+ chain files)."""
    out = outdir or cfg.out
    if not out:
        raise ValidationError("no output directory configured; set 'out' or pass --out")
    trace, drive, ctrace = _scenario_compute(cfg, dt)
    paths = {"trace": f"{out}/trace.csv", "drive": f"{out}/drive.csv"}
    write_trace(trace, paths["trace"])
    write_drive(drive, trace.times, paths["drive"])
    if ctrace is not None:
        paths["norms"] = f"{out}/norms.csv"
        write_norms(ctrace, paths["norms"])
        paths["snapshots"] = write_snapshots(_thin_trace(ctrace, _MAX_SNAPSHOT_FILES), out)
    return paths


def tune_command(cfg: ScenarioConfig) -> int:
    """Print the tuned couplings and the predicted on-resonance probability."""
    if cfg.tuning is None:
        raise ValidationError("tune needs a 'tuning' section")
    if cfg.soliton is None or cfg.soliton.T is None:
        raise ValidationError("tune needs a moving soliton scenario")
    if cfg.qubit is None:
        raise ValidationError("tune needs a 'qubit' section")
    tr = tune_dz(cfg.soliton, cfg.chain, cfg.qubit, cfg.tuning.eta)
    dxy = solve_dxy_for_target(cfg.tuning.xi, cfg.tuning.p, cfg.tuning.sign, cfg.soliton, cfg.chain.S)
    T = cfg.soliton.T
    zm = target_to_zeromode(cfg.tuning.xi, cfg.tuning.p, cfg.tuning.sign)
    print(f"dz0_T = {tr.dz0 * T:.12g}")
    print(f"dz1_T = {tr.dz1 * T:.12g}")
    print(f"dz_T = {tr.dz * T:.12g}")
    print(f"dxy_T = {dxy * T:.12g}")
    print(f"predicted_P_minus = {onresonance_pminus(zm / math.pi):.12g}")
    return 0


# fixed parameter sets behind the three figure commands
_FIG1 = dict(J=1.0, A=3.0, S=1.0, N=1000, k=0.015708, L=10.0, kind="bright", t_final=300.0)
_FIG3 = dict(J=1.0, A=1.0, S=1.0, N=1000, k=math.pi - 0.015708, L=10.0, kind="dark", t_final=200.0)


def _figure_chain(fig: dict, outdir: str, dt: float | None, t_final: float | None,
                  sample_every: int | None) -> dict:
    params = ChainParams(J=fig["J"], A=fig["A"], S=fig["S"], N=fig["N"])
    spec = make_soliton(params, fig["kind"], k=fig["k"], L=fig["L"], x0=params.N / 2.0)
    t_f = t_final if t_final is not None else fig["t_final"]
    h = dt if dt is not None else default_dt(params)
    nsteps = int(round(t_f / h))
    trace = evolve(
        initial_chain_state(spec, params, 0.0),
        params,
        t_f,
        dt=h,
        sample_every=_chain_samples(nsteps, sample_every, dense=False),
    )
    paths = {"norms": f"{outdir}/norms.csv", "profile": f"{outdir}/profile.csv"}
    write_norms(trace, paths["norms"])
    write_profile(spec, np.arange(params.N) * params.dx, 0.0, paths["profile"])
    paths["snapshots"] = write_snapshots(trace, outdir)
    return paths


def _figure_switching(outdir: str, dt: float | None) -> dict:
    chain = ChainParams(J=1.0, A=10.0, S=10.0, N=1000)
    spec = make_soliton(chain, "bright", k=math.pi / 30.0, L=10.0)
    base = QubitParams(dxy=0.0, dz=0.0, mu=1.0, nu=1.0, H0=0.0)
    tr = tune_dz(spec, chain, base, eta=1.372)
    dxy = solve_dxy_for_target(1.0, 0, -1, spec, chain.S)
    t_i, t_f = -8.0 * spec.T, 8.0 * spec.T
    q = replace(base, dxy=dxy, dz=tr.dz)
    q_raw = replace(base, dxy=dxy, dz=tr.dz0)  # no quadratic correction
    paths = {}
    for name, qq, mode in (
        ("trace_exact", q, "exact"),
        ("trace_taylor", q, "taylor"),
        ("trace_uncorrected", q_raw, "exact"),
    ):
        drive = make_drive(spec, qq, chain, "analytic", mode)
        trace = integrate_tdse(drive, None, t_i, t_f, dt)
        paths[name] = f"{outdir}/{name}.csv"
        write_trace(trace, paths[name])
        if name == "trace_exact":
            paths["drive"] = f"{outdir}/drive.csv"
            write_drive(drive, trace.times, paths["drive"])
    return paths


def reproduce_figure(
    fig_id: int,
    outdir: str,
    dt: float | None = None,
    t_final: float | None = None,
    sample_every: int | None = None,
) -> dict:
    """Write the plot-ready data behind one of the built-in figures.

    1: bright-soliton chain stability (snapshots, norms, t=0 profile);
    2: resonant qubit switching (exact/taylor/uncorrected traces, drive);
    3: dark-soliton chain stability.  ``t_final`` and ``sample_every``
    override the built-in evolution length and snapshot cadence of the
    chain figures.
    """
    if fig_id == 1:
        return _figure_chain(_FIG1, outdir, dt, t_final, sample_every)
    if fig_id == 2:
        return _figure_switching(outdir, dt)
    if fig_id == 3:
        return _figure_chain(_FIG3, outdir, dt, t_final, sample_every)
    raise ValidationError(f"figure id must be 1, 2 or 3, got {fig_id}")


def parse_sweep(raw: dict) -> SweepConfig:
    base = _section(raw, "scenario")
    cfg = SweepConfig(
        base=base,
        param=_field(raw, "sweep", "param", str),
        start=_field(raw, "sweep", "start"),
        stop=_field(raw, "sweep", "stop"),
        count=_field(raw, "sweep", "count", int),
        reduction=_field(raw, "sweep", "reduction", str, default="final_pminus"),
    )
    if cfg.count < 2:
        raise ValidationError(f"sweep.count must be >= 2, got {cfg.count}")
    if cfg.reduction not in ("final_pminus", "max_pminus"):
        raise ValidationError(
            f"sweep.reduction must be 'final_pminus' or 'max_pminus', got {cfg.reduction!r}"
        )
    parse_scenario(base)  # validate the base once up front
    _resolve_parent(base, cfg.param)  # and the swept key
    return cfg


def _resolve_parent(tree: dict, dotted: str) -> tuple[dict, str]:
    node = tree
    parts = dotted.split(".")
    for part in parts[:-1]:
        node = node.get(part) if isinstance(node, dict) else None
        if node is None:
            raise ValidationError(f"unknown sweep parameter {dotted!r}")
    if not isinstance(node, dict) or parts[-1] not in node:
        raise ValidationError(f"unknown sweep parameter {dotted!r}")
    return node, parts[-1]


def sweep(cfg: SweepConfig, outdir: str, dt: float | None = None, threads: int = 1) -> str:
    """Run the scenario across the parameter range; write sweep.csv."""
    if not outdir:
        raise ValidationError("no output directory configured; set 'out' or pass --out")
    values = np.linspace(cfg.start, cfg.stop, cfg.count)

    def one(value: float) -> float:
        raw = copy.deepcopy(cfg.base)
        node, leaf = _resolve_parent(raw, cfg.param)
        node[leaf] = value
        trace, _, _ = _scenario_compute(parse_scenario(raw), dt)
        return float(trace.pminus[-1] if cfg.reduction == "final_pminus" else trace.pminus.max())

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, values))
    else:
        results = [one(v) for v in values]
    path = f"{outdir}/sweep.csv"
    write_csv(path, [cfg.param, "reduction_value"], zip(values, results))
    return path


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc}") from exc


def _cmd_chain_run(args: argparse.Namespace) -> int:
    raw = _load_config(args.config)
    cfg = parse_scenario(raw)
    if cfg.soliton is None:
        raise ValidationError("chain run needs chain and soliton sections")
    if cfg.evolve.t_final is None:
        raise ValidationError("chain run needs evolve.t_final")
    out = args.out or cfg.out
    if not out:
        raise ValidationError("no output directory configured; set 'out' or pass --out")
    trace = _run_chain(cfg, 0.0, cfg.evolve.t_final, args.dt)
    write_norms(trace, f"{out}/norms.csv")
    write_snapshots(trace, out)
    return 0


def _cmd_qubit_run(args: argparse.Namespace) -> int:
    cfg = parse_scenario(_load_config(args.config))
    run_scenario(cfg, outdir=args.out, dt=args.dt)
    return 0


def _cmd_tune(args: argparse.Namespace) -> int:
    return tune_command(parse_scenario(_load_config(args.config)))


def _cmd_fig(args: argparse.Namespace) -> int:
    outdir = args.out or f"fig{args.id}"
    reproduce_figure(args.id, outdir, dt=args.dt)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    raw = _load_config(args.config)
    cfg = parse_sweep(raw)
    sweep(cfg, outdir=args.out or raw.get("out"), dt=args.dt, threads=args.threads)
    return 0


def _add_common(p: argparse.ArgumentParser, config: bool = True) -> None:
    if config:
        p.add_argument("--config", required=True, help="path to the JSON scenario file")
    p.add_argument("--out", help="output directory (overrides the config's 'out')")
    p.add_argument("--dt", type=float, help="integrator step override")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="solitonqubit", description="soliton-driven qubit simulator and analytics"
    )
    sub = p.add_subparsers(dest="command", required=True)

    chain_p = sub.add_parser("chain", help="chain-only commands")
    chain_sub = chain_p.add_subparsers(dest="subcommand", required=True)
    run_p = chain_sub.add_parser("run", help="evolve a soliton on the chain, write snapshots")
    _add_common(run_p)
    run_p.set_defaults(func=_cmd_chain_run)

    qubit_p = sub.add_parser("qubit", help="qubit-drive commands")
    qubit_sub = qubit_p.add_subparsers(dest="subcommand", required=True)
    qrun_p = qubit_sub.add_parser("run", help="integrate a driven-qubit scenario")
    _add_common(qrun_p)
    qrun_p.set_defaults(func=_cmd_qubit_run)

    tune_p = sub.add_parser("tune", help="print tuned couplings for a target probability")
    tune_p.add_argument("--config", required=True, help="path to the JSON scenario file")
    tune_p.set_defaults(func=_cmd_tune)

    fig_p = sub.add_parser("fig", help="write the data behind a built-in figure")
    fig_p.add_argument("id", type=int, choices=(1, 2, 3))
    _add_common(fig_p, config=False)
    fig_p.set_defaults(func=_cmd_fig)

    sweep_p = sub.add_parser("sweep", help="scan one parameter, write sweep.csv")
    _add_common(sweep_p)
    sweep_p.add_argument("--threads", type=int, default=1, help="concurrent scenario workers")
    sweep_p.set_defaults(func=_cmd_sweep)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
