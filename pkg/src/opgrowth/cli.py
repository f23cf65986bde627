"""Batch driver: run sweeps and emit the CSV/JSON artifacts.

Subcommands
-----------
lanczos    compute b_n for one model or a g-sweep (b.csv + sidecars,
           plus collapse outputs when a sweep requests them)
evolve     integrate the Krylov chain for a measured b.csv (C.csv,
           depth.csv, optional phi.csv)
analytic   closed-form coefficients and dynamics for the solvable types
fit        straight-line scaling fit of a b.csv (report JSON + a CSV
           with the transformed coordinates, including tabulated W(n))
collapse   crossover-collapse report from a reference and sweep b.csv's
oracle     dense small-chain Lanczos coefficients (ground truth)

The pipeline is deterministic and file-based; there is no RNG anywhere
(--seedless is accepted for compatibility and must be bare).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import autocorrelation, evolve, mean_depth
from .fileio import read_b_csv, read_sidecar, write_csv, write_sidecar
from .lanczos import LanczosSequence, run_lanczos
from .model import HamiltonianSpec, ObservableSpec
from .oracles import SolvableType, closed_form_b, dense_lanczos_oracle
from .scaling import FIT_KINDS, collapse, fit_scaling


class ConfigError(ValueError):
    """Configuration problem, reported with a field path."""


def _require(cond: bool, field: str, message: str):
    if not cond:
        raise ConfigError(f"{field}: {message}")


def _model_from_config(model: dict) -> tuple[HamiltonianSpec, ObservableSpec]:
    _require(isinstance(model, dict), "model", "must be an object")
    h = model.get("h")
    _require(isinstance(h, (int, float)), "model.h", "must be a number")
    g = model.get("g", 0.0)
    _require(isinstance(g, (int, float)), "model.g", "must be a number")
    profile = model.get("g_profile", "uniform" if g != 0.0 else "none")
    _require(profile in ("uniform", "site0", "none"), "model.g_profile",
             "must be 'uniform', 'site0' or 'none'")
    obs = model.get("observable")
    _require(obs in ("x", "y", "z", "xx", "yy", "zz"), "model.observable",
             f"unknown observable {obs!r}")
    if g == 0.0:
        profile = "none"
    return HamiltonianSpec(float(h), float(g), profile), ObservableSpec(obs)


def _load_config(args) -> dict:
    if args.config is None:
        raise ConfigError("--config: required for this command")
    path = Path(args.config)
    if not path.exists():
        raise ConfigError(f"--config: {path} does not exist")
    try:
        cfg = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"--config: {path}: invalid JSON ({e})")
    _require(isinstance(cfg, dict), "config", "top level must be an object")
    if args.n_max is not None:
        cfg["n_max"] = args.n_max
    if args.epsilon is not None:
        cfg["epsilon"] = args.epsilon
    return cfg


def _write_b_outputs(out_dir: Path, seq: LanczosSequence, config_echo: dict) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "b.csv"
    write_csv(path, ["n", "b_n"], list(enumerate(seq.b)))
    write_sidecar(path, {
        "command": "lanczos",
        "version": __version__,
        "config": config_echo,
        "meta": seq.meta.to_dict(),
        "partial": seq.meta.status != "ok",
    })
    return path


def cmd_lanczos(args) -> int:
    cfg = _load_config(args)
    H, obs = _model_from_config(cfg.get("model", {}))
    n_max = cfg.get("n_max")
    _require(isinstance(n_max, int) and n_max >= 1, "n_max", "must be an integer >= 1")
    epsilon = float(cfg.get("epsilon", 0.0))
    _require(epsilon >= 0.0, "epsilon", "must be >= 0")
    max_terms = cfg.get("max_terms")
    _require(max_terms is None or (isinstance(max_terms, int) and max_terms > 0),
             "max_terms", "must be a positive integer or null")
    out = Path(args.out)
    sweep = cfg.get("sweep")
    failed = False

    if not sweep:
        seq = run_lanczos(H, obs, n_max, epsilon, max_terms)
        _write_b_outputs(out, seq, cfg)
        return 0 if seq.meta.status in ("ok", "krylov_exhausted") else 1

    gs = sweep.get("g") if isinstance(sweep, dict) else None
    _require(isinstance(gs, list) and len(gs) >= 1 and
             all(isinstance(v, (int, float)) for v in gs),
             "sweep.g", "must be a non-empty list of numbers")
    profile = cfg.get("model", {}).get("g_profile", "uniform")

    def one(g: float) -> tuple[float, LanczosSequence]:
        Hg = HamiltonianSpec.from_config(H.transverse_h, g, profile if g != 0.0 else "none")
        seq = run_lanczos(Hg, obs, n_max, epsilon, max_terms)
        echo = dict(cfg)
        echo["model"] = dict(cfg.get("model", {}), g=g)
        _write_b_outputs(out / f"g_{g:g}", seq, echo)
        return g, seq

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(one, [float(g) for g in gs]))
    failed = any(seq.meta.status == "term_cap_exceeded" for _, seq in results)

    analysis = cfg.get("analysis", {})
    col = analysis.get("collapse", {}) if isinstance(analysis, dict) else {}
    if col.get("enabled"):
        nonzero = [(g, seq) for g, seq in results if g != 0.0]
        ref = next((seq for g, seq in results if g == 0.0), None)
        if ref is None:
            Href = HamiltonianSpec.from_config(H.transverse_h, 0.0, "none")
            ref = run_lanczos(Href, obs, n_max, epsilon, max_terms)
        t0 = time.perf_counter()
        rep = collapse(ref, nonzero, threshold=float(col.get("threshold", 0.2)))
        _write_collapse_outputs(out, rep, cfg, time.perf_counter() - t0)
    return 1 if failed else 0


def _write_collapse_outputs(out: Path, rep, config_echo: dict, wall_s: float = 0.0):
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for g, curve in zip(rep.g_values, rep.scaled_curves):
        for n, v in zip(rep.n, curve):
            rows.append([n, g, v])
    path = out / "collapse.csv"
    write_csv(path, ["n", "g", "scaled_delta_b"], rows)
    write_sidecar(path, {
        "command": "collapse",
        "version": __version__,
        "config": config_echo,
        "wall_time_s": wall_s,
        "report": rep.to_dict(),
    })
    (out / "collapse.json").write_text(
        json.dumps({"version": __version__, "report": rep.to_dict()}, indent=2, sort_keys=True) + "\n"
    )


def cmd_evolve(args) -> int:
    t0 = time.perf_counter()
    cfg = _load_config(args) if args.config else {}
    dyn = cfg.get("dynamics", {})
    b_csv = args.b_csv or dyn.get("b_csv")
    _require(b_csv is not None, "dynamics.b_csv", "path to a b.csv is required (--b-csv)")
    b = read_b_csv(Path(b_csv))
    t_max = float(args.t_max if args.t_max is not None else dyn.get("t_max", 3.0))
    t_points = int(args.t_points if args.t_points is not None else dyn.get("t_points", 61))
    n_trunc = args.n_trunc if args.n_trunc is not None else dyn.get("n_trunc", len(b) - 1)
    method = args.method or dyn.get("method", "rk4")
    extension = dyn.get("extension")
    threshold = float(dyn.get("leakage_threshold", 1e-8))
    t_grid = np.linspace(0.0, t_max, t_points)
    state = evolve(b, t_grid, int(n_trunc), tolerance=threshold, method=method,
                   extension=extension)
    _write_dynamics_outputs(Path(args.out), state, {
        "b_csv": str(b_csv), "t_max": t_max, "t_points": t_points,
        "n_trunc": int(n_trunc), "method": method, "extension": extension,
        "leakage_threshold": threshold, "config": cfg,
    }, dump_phi=args.dump_phi or bool(dyn.get("dump_phi")),
        wall_s=time.perf_counter() - t0)
    return 0


def _write_dynamics_outputs(out: Path, state, echo: dict, dump_phi: bool, wall_s: float = 0.0):
    out.mkdir(parents=True, exist_ok=True)
    side = {
        "command": "evolve",
        "version": __version__,
        "config": echo,
        "wall_time_s": wall_s,
        "meta": dict(state.meta),
        "max_boundary_leakage": float(state.boundary_leakage.max()),
        "max_norm_error": float(state.norm_error.max()),
        "certified_fraction": float(np.mean(state.certified)),
        "leakage_exceeded_times": [float(t) for t in state.times[~state.certified]],
    }
    c_path = out / "C.csv"
    write_csv(c_path, ["t", "C"], zip(state.times, autocorrelation(state)))
    write_sidecar(c_path, side)
    d_path = out / "depth.csv"
    write_csv(d_path, ["t", "mean_depth"], zip(state.times, mean_depth(state)))
    write_sidecar(d_path, side)
    if dump_phi:
        rows = []
        for i, t in enumerate(state.times):
            for n in range(state.N_trunc + 1):
                rows.append([t, n, state.phi[i, n]])
        p_path = out / "phi.csv"
        write_csv(p_path, ["t", "n", "phi"], rows)
        write_sidecar(p_path, side)


def cmd_analytic(args) -> int:
    t0 = time.perf_counter()
    kind = {"I": "type_I", "II": "type_II", "III": "type_III"}.get(args.type, args.type)
    try:
        s = SolvableType(kind, args.alpha, args.eta)
    except ValueError as e:
        raise ConfigError(f"--type/--alpha/--eta: {e}")
    n_trunc = args.n_trunc if args.n_trunc is not None else 80
    t_grid = np.linspace(0.0, args.t_max, args.t_points)
    method = args.method or ("chebyshev" if kind == "type_III" else "rk4")
    state = evolve(s, t_grid, n_trunc, method=method)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    b_path = out / "b.csv"
    write_csv(b_path, ["n", "b_n"], [(n, closed_form_b(s, n)) for n in range(n_trunc + 1)])
    write_sidecar(b_path, {
        "command": "analytic", "version": __version__,
        "config": {"type": kind, "alpha": args.alpha, "eta": args.eta, "n_trunc": n_trunc},
        "wall_time_s": time.perf_counter() - t0,
    })
    _write_dynamics_outputs(out, state, {
        "type": kind, "alpha": args.alpha, "eta": args.eta,
        "t_max": args.t_max, "t_points": args.t_points, "n_trunc": n_trunc,
        "method": method,
    }, dump_phi=args.dump_phi, wall_s=time.perf_counter() - t0)
    return 0


def cmd_fit(args) -> int:
    t0 = time.perf_counter()
    if args.kind not in FIT_KINDS:
        raise ConfigError(f"--kind: must be one of {FIT_KINDS}")
    b = read_b_csv(Path(args.input[0]))
    n_hi = args.window[1] if args.window else len(b) - 1
    n_lo = args.window[0] if args.window else max(1, n_hi // 2)
    rep = fit_scaling(b, args.kind, (n_lo, n_hi))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"fit_{args.kind}"
    csv_path = out / f"{stem}.csv"
    rows = [
        [n, b[n], x, y]
        for n, x, y in zip(rep.n, rep.abscissa, rep.ordinate)
    ]
    write_csv(csv_path, ["n", "b_n", "abscissa", "ordinate"], rows)
    payload = {"command": "fit", "version": __version__,
               "config": {"input": str(args.input[0]), "kind": args.kind,
                          "window": [n_lo, n_hi]},
               "wall_time_s": time.perf_counter() - t0, "report": rep.to_dict()}
    write_sidecar(csv_path, payload)
    (out / f"{stem}.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_collapse(args) -> int:
    t0 = time.perf_counter()
    ref = read_b_csv(Path(args.ref))
    runs = []
    for path in args.input:
        side = read_sidecar(Path(path))
        g = None
        if side is not None:
            g = side.get("meta", {}).get("g", side.get("config", {}).get("model", {}).get("g"))
        if g is None:
            raise ConfigError(f"{path}: sidecar with the g value is required for collapse")
        runs.append((float(g), read_b_csv(Path(path))))
    lengths = {len(b) for _, b in runs} | {len(ref)}
    if len(lengths) > 1:
        raise ConfigError(f"inputs have incompatible n grids (lengths {sorted(lengths)})")
    rep = collapse(ref, runs, threshold=args.threshold)
    _write_collapse_outputs(Path(args.out), rep, {"ref": str(args.ref),
                                                  "inputs": [str(p) for p in args.input]},
                            time.perf_counter() - t0)
    return 0


def cmd_oracle(args) -> int:
    t0 = time.perf_counter()
    profile = args.profile
    if args.g == 0.0:
        profile = "none"
    try:
        b = dense_lanczos_oracle(args.h, args.g, profile, args.obs, args.sites, args.n_max)
    except ValueError as e:
        raise ConfigError(str(e))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "b.csv"
    write_csv(path, ["n", "b_n"], list(enumerate(b)))
    write_sidecar(path, {
        "command": "oracle", "version": __version__,
        "config": {"sites": args.sites, "h": args.h, "g": args.g,
                   "g_profile": profile, "observable": args.obs, "n_max": args.n_max},
        "meta": {"g": args.g, "exhausted": len(b) - 1 < args.n_max},
        "wall_time_s": time.perf_counter() - t0,
    })
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opgrowth",
                                description="Operator-growth pipeline for the tl-Ising chain")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON run configuration")
        sp.add_argument("--out", required=True, help="output directory")
        sp.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")
        sp.add_argument("--n-max", type=int, default=None, dest="n_max")
        sp.add_argument("--epsilon", type=float, default=None)
        sp.add_argument("--seedless", action="store_true",
                        help="reserved; the pipeline never uses an RNG")

    sp = sub.add_parser("lanczos", help="compute Lanczos coefficients")
    common(sp)
    sp.set_defaults(func=cmd_lanczos)

    sp = sub.add_parser("evolve", help="Krylov-chain dynamics from a measured b.csv")
    common(sp)
    sp.add_argument("--b-csv", dest="b_csv")
    sp.add_argument("--t-max", type=float, dest="t_max")
    sp.add_argument("--t-points", type=int, dest="t_points")
    sp.add_argument("--n-trunc", type=int, dest="n_trunc")
    sp.add_argument("--method", choices=["rk4", "chebyshev"])
    sp.add_argument("--dump-phi", action="store_true", dest="dump_phi")
    sp.set_defaults(func=cmd_evolve)

    sp = sub.add_parser("analytic", help="closed-form dynamics for the solvable types")
    common(sp)
    sp.add_argument("--type", required=True, help="type_I | type_II | type_III")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--eta", type=float, default=None)
    sp.add_argument("--t-max", type=float, default=4.0, dest="t_max")
    sp.add_argument("--t-points", type=int, default=81, dest="t_points")
    sp.add_argument("--n-trunc", type=int, dest="n_trunc")
    sp.add_argument("--method", choices=["rk4", "chebyshev"])
    sp.add_argument("--dump-phi", action="store_true", dest="dump_phi")
    sp.set_defaults(func=cmd_analytic)

    sp = sub.add_parser("fit", help="straight-line scaling fit of a b.csv")
    common(sp)
    sp.add_argument("--in", dest="input", nargs=1, required=True)
    sp.add_argument("--kind", required=True)
    sp.add_argument("--window", type=int, nargs=2, metavar=("N_LO", "N_HI"))
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("collapse", help="crossover collapse from b.csv files")
    common(sp)
    sp.add_argument("--ref", required=True, help="zero-field reference b.csv")
    sp.add_argument("--in", dest="input", nargs="+", required=True)
    sp.add_argument("--threshold", type=float, default=0.2)
    sp.set_defaults(func=cmd_collapse)

    sp = sub.add_parser("oracle", help="dense small-chain Lanczos oracle")
    common(sp)
    sp.add_argument("--sites", type=int, required=True)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--g", type=float, default=0.0)
    sp.add_argument("--profile", default="uniform", choices=["uniform", "site0", "none"])
    sp.add_argument("--obs", required=True)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        rc = args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if rc == 0:
        print(f"{args.command}: done in {time.perf_counter() - t0:.2f}s -> {args.out}")
    else:
        print(f"{args.command}: completed with failures (exit {rc})", file=sys.stderr)
    return rc


if __name__ == "__main__":
    sys.exit(main())
