"""Command-line experiment driver.

Subcommands: plan (one scalarized coverage run), moes (full planner run
plus Pareto/hypervolume evaluation), sweep (planner runs over a list of
step sizes), hv (hypervolume of a front CSV), dist (pairwise map distance
table). Configuration is a JSON file; see ExperimentConfig.

All randomness flows from the config seed, outputs carry no timestamps,
JSON keys are sorted and floats use shortest round-trip notation, so a
repeated run writes byte-identical files.
"""

import argparse
import dataclasses
import json
import logging
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import dynamics, fourier, metrics, moes
from ._backend import BACKEND
from .ergopt import ErgOptConfig, ergodic_search
from .moes import MapFamily, PlannerConfig

log = logging.getLogger(__name__)

MODES = ("sles", "asles", "scala")


class ConfigError(ValueError):
    """Validation failure with the offending field in the message."""


def _fmt(x):
    """Shortest round-trip decimal for floats; plain str otherwise."""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _write_csv(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join("" if v is None else _fmt(v) for v in row) + "\n")


def _write_json(path, obj):
    with open(path, "w", newline="\n") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: maps, basis size, robot, optimizer, planner, seed.

    maps entries are any of: a CSV or JSON path (relative to the config
    file), "builtin:<name>" for a packaged benchmark spec, "uniform",
    {"mixture": [components]} inline, or {"random_mixture": {...}} drawn
    from the seed (see random_mixture_spec; a "like" entry re-jitters an
    earlier map to make a near-duplicate).
    """

    maps: tuple
    model: dynamics.RobotModel
    optimizer: ErgOptConfig
    planner: PlannerConfig
    k_max: int = 10
    resolution: int = 200
    reference: tuple = None
    weight: tuple = None
    seed: int = 0
    base_dir: Path = Path(".")


def _section(raw, name, allowed):
    sub = raw.pop(name, {})
    if not isinstance(sub, dict):
        raise ConfigError(f"{name}: expected a JSON object")
    for key in sub:
        if key not in allowed:
            raise ConfigError(f"{name}.{key}: unknown field (allowed: {sorted(allowed)})")
    return sub


def load_config(path):
    """Parse and validate a JSON experiment config; errors name the field."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    raw = dict(raw)

    maps = raw.pop("maps", None)
    if not isinstance(maps, list) or not maps:
        raise ConfigError("maps: required, a nonempty list of map sources")
    base = path.parent
    for i, entry in enumerate(maps):
        _validate_map_entry(f"maps[{i}]", entry, base, i)

    model_raw = _section(raw, "model", {
        "kind", "dt", "n_steps", "lengths", "start", "v_max", "omega_max", "speed_max"})
    kind = model_raw.pop("kind", dynamics.DIFFERENTIAL_DRIVE)
    for key in ("lengths", "start"):
        if key in model_raw:
            model_raw[key] = tuple(model_raw[key])
    try:
        if kind == dynamics.DIFFERENTIAL_DRIVE:
            model = dynamics.differential_drive(**model_raw)
        elif kind == dynamics.SINGLE_INTEGRATOR:
            model = dynamics.single_integrator(**model_raw)
        else:
            raise ConfigError(
                f"model.kind: must be {dynamics.DIFFERENTIAL_DRIVE!r} or "
                f"{dynamics.SINGLE_INTEGRATOR!r}, got {kind!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"model: {exc}") from None

    opt_raw = _section(raw, "optimizer", {
        "epsilon", "max_iters", "alpha", "shrink", "armijo_c", "alpha_min",
        "alpha_cap", "growth", "beta", "probe_limit", "bootstrap"})
    try:
        optimizer = ErgOptConfig(**opt_raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"optimizer: {exc}") from None

    plan_raw = _section(raw, "planner", {
        "mode", "d", "d_prime", "w_init", "rho", "squared_edges", "include_corners"})
    if "w_init" in plan_raw and plan_raw["w_init"] is not None:
        plan_raw["w_init"] = tuple(plan_raw["w_init"])
    try:
        planner = PlannerConfig(opt=optimizer, **plan_raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"planner: {exc}") from None

    k_max = raw.pop("k_max", 10)
    if not isinstance(k_max, int) or k_max < 0:
        raise ConfigError(f"k_max: must be a nonnegative integer, got {k_max!r}")
    resolution = raw.pop("resolution", 200)
    if not isinstance(resolution, int) or resolution < 2 * (k_max + 1):
        raise ConfigError(
            f"resolution: must be an integer >= {2 * (k_max + 1)} (Nyquist for k_max={k_max})")

    reference = raw.pop("reference", None)
    if reference is not None:
        reference = tuple(float(r) for r in reference)
        if len(reference) != len(maps):
            raise ConfigError(
                f"reference: needs {len(maps)} components, got {len(reference)}")
    weight = raw.pop("weight", None)
    if weight is not None:
        weight = tuple(float(w) for w in weight)
    seed = raw.pop("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError(f"seed: must be an integer, got {seed!r}")
    if raw:
        raise ConfigError(f"unknown top-level fields: {sorted(raw)}")
    return ExperimentConfig(maps=tuple(maps), model=model, optimizer=optimizer,
                            planner=planner, k_max=k_max, resolution=resolution,
                            reference=reference, weight=weight, seed=seed,
                            base_dir=base)


def _validate_map_entry(label, entry, base, index):
    if isinstance(entry, str):
        if entry == "uniform":
            return
        if entry.startswith("builtin:"):
            name = entry.split(":", 1)[1]
            if not _builtin_path(name):
                raise ConfigError(f"{label}: no builtin map named {name!r} "
                                  f"(available: {sorted(_builtin_names())})")
            return
        target = base / entry
        if not target.exists():
            raise ConfigError(f"{label}: map file not found: {target}")
        if target.suffix not in (".csv", ".json"):
            raise ConfigError(f"{label}: map files must be .csv or .json, got {target.name}")
        return
    if isinstance(entry, dict):
        if set(entry) == {"mixture"}:
            if not isinstance(entry["mixture"], list) or not entry["mixture"]:
                raise ConfigError(f"{label}.mixture: expected a nonempty component list")
            return
        if set(entry) == {"random_mixture"}:
            params = entry["random_mixture"]
            if not isinstance(params, dict):
                raise ConfigError(f"{label}.random_mixture: expected a JSON object")
            like = params.get("like")
            if like is not None and not (isinstance(like, int) and 0 <= like < index):
                raise ConfigError(
                    f"{label}.random_mixture.like: must reference an earlier map index")
            return
    raise ConfigError(f"{label}: expected a path, builtin name, or mixture spec")


def _builtin_names():
    root = resources.files("moesearch") / "maps"
    return [p.name[:-5] for p in root.iterdir() if p.name.endswith(".json")]


def _builtin_path(name):
    p = resources.files("moesearch") / "maps" / f"{name}.json"
    return p if p.is_file() else None


# ---------------------------------------------------------------------------
# benchmark map generation

def random_mixture_spec(rng, components=2, center_low=0.3, center_high=0.7,
                        min_separation=0.25, sigma_low=0.17, sigma_high=0.21,
                        weight_low=0.4, weight_high=0.6):
    """Draw a Gaussian-mixture spec with well-separated, mid-box modes.

    The ranges default to a family whose scalarized maps stay smooth
    enough for the optimizer to reach tight coverage within the episode
    budget; pass explicit bounds to leave that regime.
    """
    for _ in range(1000):
        centers = rng.uniform(center_low, center_high, size=(components, 2))
        if components == 1:
            break
        gaps = np.linalg.norm(centers[:, None] - centers[None], axis=-1)
        if gaps[np.triu_indices(components, 1)].min() >= min_separation:
            break
    else:
        raise ValueError("could not place mixture centers at the requested separation")
    sigmas = rng.uniform(sigma_low, sigma_high, size=components)
    weights = rng.uniform(weight_low, weight_high, size=components)
    weights = weights / weights.sum()
    return [{"mean": c.tolist(), "sigma": float(s), "weight": float(w)}
            for c, s, w in zip(centers, sigmas, weights)]


def _jittered_spec(rng, base_components, jitter_mean=0.04, jitter_sigma=0.01,
                   lengths=(1.0, 1.0)):
    """Near-duplicate of an existing spec: small perturbations per component."""
    out = []
    for comp in base_components:
        mean = np.asarray(comp["mean"], dtype=float)
        mean = mean + rng.uniform(-jitter_mean, jitter_mean, size=mean.shape)
        mean = np.clip(mean, 0.05, np.asarray(lengths) - 0.05)
        sigma = float(comp["sigma"]) + float(rng.uniform(-jitter_sigma, jitter_sigma))
        out.append({"mean": mean.tolist(), "sigma": max(sigma, 0.05),
                    "weight": comp["weight"]})
    return out


def resolve_maps(cfg):
    """Materialize config map sources into InfoMaps on a shared basis."""
    basis = fourier.build_basis(2, cfg.model.lengths, cfg.k_max)
    built = []
    specs = []
    for i, entry in enumerate(cfg.maps):
        spec = None
        if isinstance(entry, str):
            if entry == "uniform":
                imap = fourier.uniform_map(basis, cfg.resolution)
            elif entry.startswith("builtin:"):
                path = _builtin_path(entry.split(":", 1)[1])
                spec = json.loads(path.read_text())
                imap = fourier.infomap_from_mixture(spec, basis, cfg.resolution)
            elif entry.endswith(".csv"):
                imap = fourier.load_map_csv(cfg.base_dir / entry, basis)
            else:
                spec = json.loads((cfg.base_dir / entry).read_text())
                imap = fourier.infomap_from_mixture(spec, basis, cfg.resolution)
        elif "mixture" in entry:
            spec = entry["mixture"]
            imap = fourier.infomap_from_mixture(spec, basis, cfg.resolution)
        else:
            params = dict(entry["random_mixture"])
            rng = np.random.default_rng((cfg.seed, i))
            like = params.pop("like", None)
            if like is not None:
                if specs[like] is None:
                    raise ConfigError(
                        f"maps[{i}].random_mixture.like: map {like} is a grid map "
                        "with no mixture spec to jitter")
                spec = _jittered_spec(rng, specs[like], lengths=cfg.model.lengths,
                                      **params)
            else:
                spec = random_mixture_spec(rng, **params)
            imap = fourier.infomap_from_mixture(spec, basis, cfg.resolution)
        built.append(imap)
        specs.append(spec)
    return basis, built, specs


# ---------------------------------------------------------------------------
# output writers

def _control_header(model):
    return ["v", "omega"] if model.kind == dynamics.DIFFERENTIAL_DRIVE else ["vx", "vy"]


def _state_header(model):
    return (["x", "y", "theta"] if model.kind == dynamics.DIFFERENTIAL_DRIVE
            else ["x", "y"])


def write_trajectory_csv(path, model, traj, u):
    """States and the control applied over each step; blank on the last row."""
    header = ["t"] + _state_header(model) + _control_header(model)
    rows = []
    for i, state in enumerate(traj.states):
        ctrl = list(u[i]) if i < len(u) else [None] * u.shape[1]
        rows.append([i * model.dt, *state, *ctrl])
    _write_csv(path, header, rows)


def load_trajectory_csv(path):
    """Round-trip reader: (times, states, controls) from write_trajectory_csv."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        n_state = 3 if "theta" in header else 2
        times, states, controls = [], [], []
        for line in fh:
            cells = line.rstrip("\n").split(",")
            times.append(float(cells[0]))
            states.append([float(c) for c in cells[1:1 + n_state]])
            tail = cells[1 + n_state:]
            if all(tail):
                controls.append([float(c) for c in tail])
    return np.asarray(times), np.asarray(states), np.asarray(controls)


def write_front_csv(path, records, flags):
    m = len(records[0].weight)
    header = ([f"w_{i}" for i in range(m)] + [f"e_{i}" for i in range(m)]
              + ["nondominated"])
    rows = [[*r.weight, *r.ergodic_vector, int(f)] for r, f in zip(records, flags)]
    _write_csv(path, header, rows)


def load_front_csv(path):
    """Round-trip reader: (weights, vectors, flags) from write_front_csv."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        rows = [[float(c) for c in line.strip().split(",")] for line in fh if line.strip()]
    data = np.asarray(rows)
    w_cols = [i for i, h in enumerate(header) if h.startswith("w_")]
    e_cols = [i for i, h in enumerate(header) if h.startswith("e_")]
    if not e_cols:
        e_cols = list(range(data.shape[1]))
        w_cols = []
    flag_col = header.index("nondominated") if "nondominated" in header else None
    flags = data[:, flag_col].astype(bool) if flag_col is not None else None
    w = data[:, w_cols] if w_cols else None
    return w, data[:, e_cols], flags


def _model_manifest(model):
    return {"kind": model.kind, "dt": model.dt, "n_steps": model.n_steps,
            "lengths": list(model.lengths), "start": list(model.start),
            "v_max": model.v_max, "omega_max": model.omega_max}


def _planner_manifest(p):
    return {"mode": p.mode, "d": p.d, "d_prime": p.d_prime,
            "w_init": None if p.w_init is None else list(p.w_init),
            "rho": p.rho, "squared_edges": p.squared_edges,
            "include_corners": p.include_corners}


def _optimizer_manifest(o):
    return {"epsilon": o.epsilon, "max_iters": o.max_iters, "alpha": o.alpha,
            "beta": o.beta, "shrink": o.shrink, "armijo_c": o.armijo_c,
            "bootstrap": o.bootstrap}


# ---------------------------------------------------------------------------
# subcommands

def cmd_plan(cfg, out_dir):
    """One scalarized coverage run; writes trajectory, trace, and summary."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    basis, maps, _ = resolve_maps(cfg)
    if len(maps) == 1:
        weight = np.array([1.0])
    elif cfg.weight is not None:
        weight = moes.validate_weight(cfg.weight, len(maps))
    else:
        raise ConfigError("weight: required when more than one map is configured")
    family = MapFamily(tuple(maps), basis)
    phi_prime = moes.scalarize(family, weight)
    model = cfg.model
    u0 = np.zeros((model.n_steps, model.control_dim))
    u, trace = ergodic_search(phi_prime, u0, model, basis, cfg.optimizer)
    traj = dynamics.rollout(model, u)

    write_trajectory_csv(out / "trajectory.csv", model, traj, u)
    _write_csv(out / "trace.csv", ["iteration", "objective"],
               [[i, v] for i, v in enumerate(trace.values)])
    metric = fourier.ergodic_metric(
        fourier.trajectory_coefficients(traj.positions, basis), phi_prime, basis)
    summary = {
        "final_objective": float(trace.values[-1]),
        "final_metric": metric,
        "iterations": trace.iterations,
        "reason": trace.reason,
        "converged": trace.reason == "converged",
        "epsilon": cfg.optimizer.epsilon,
        "clamped_steps": traj.clamp_count,
    }
    if len(maps) > 1:
        summary["weight"] = [float(w) for w in weight]
        summary["ergodic_vector"] = [float(e) for e in
                                     moes.ergodic_vector(traj, family)]
    _write_json(out / "summary.json", summary)
    log.info("plan: %s after %d iterations (objective %.3e)",
             trace.reason, trace.iterations, trace.values[-1])
    return summary


def _run_records(cfg, mode):
    """Solve the configured lattice under the given CLI mode."""
    basis, maps, specs = resolve_maps(cfg)
    family = MapFamily(tuple(maps), basis)
    planner = cfg.planner
    if mode == "sles":
        planner = dataclasses.replace(planner, mode="basic")
    elif mode == "asles":
        planner = dataclasses.replace(planner, mode="adaptive")
    if mode == "scala":
        weights = [w for _, w in moes.lattice_weights(family, planner)]
        records = moes.naive_scalarization(family, cfg.model, weights, cfg.optimizer)
    else:
        records = moes.sles(family, cfg.model, planner)
    return family, planner, records, specs


def cmd_moes(cfg, out_dir, mode="sles"):
    """Planner run + evaluation; writes manifest, records, front, summaries."""
    if mode not in MODES:
        raise ConfigError(f"mode: must be one of {MODES}, got {mode!r}")
    out = Path(out_dir)
    (out / "controls").mkdir(parents=True, exist_ok=True)
    family, planner, records, specs = _run_records(cfg, mode)
    m = len(family)
    reference = cfg.reference or (1.0,) * m

    vectors = [r.ergodic_vector for r in records]
    keep = metrics.pareto_filter(vectors)
    flags = np.zeros(len(records), dtype=bool)
    flags[keep] = True
    front = [vectors[i] for i in keep]
    hv = metrics.hypervolume(front, reference)
    total_iters = int(sum(r.iterations for r in records))

    manifest = {
        "mode": mode,
        "seed": cfg.seed,
        "k_max": cfg.k_max,
        "resolution": cfg.resolution,
        "backend": BACKEND,
        "reference": list(reference),
        "n_maps": m,
        "maps": list(cfg.maps),
        "model": _model_manifest(cfg.model),
        "planner": _planner_manifest(planner),
        "optimizer": _optimizer_manifest(cfg.optimizer),
    }
    _write_json(out / "manifest.json", manifest)
    _write_json(out / "map_specs.json",
                [s if s is not None else "grid" for s in specs])

    ctrl_header = _control_header(cfg.model)
    with open(out / "solutions.jsonl", "w", newline="\n") as fh:
        for i, r in enumerate(records):
            ref = f"controls/sol_{i:03d}.csv"
            _write_csv(out / ref, ctrl_header, r.controls.tolist())
            row = {"episode": i,
                   "key": None if r.key is None else list(r.key),
                   "weight": [float(w) for w in r.weight],
                   "ergodic_vector": [float(e) for e in r.ergodic_vector],
                   "iterations": r.iterations,
                   "reason": r.reason,
                   "controls": ref}
            fh.write(json.dumps(row, sort_keys=True) + "\n")

    write_front_csv(out / "front.csv", records, flags)
    cum = 0
    ep_rows = []
    trace_rows = []
    for i, r in enumerate(records):
        cum += r.iterations
        ep_rows.append([i, r.iterations, cum, r.reason, float(r.trace.values[-1])])
        trace_rows.extend([i, j, v] for j, v in enumerate(r.trace.values))
    _write_csv(out / "episodes.csv",
               ["episode", "iterations", "cumulative_iterations", "reason",
                "final_objective"], ep_rows)
    _write_csv(out / "traces.csv", ["episode", "iteration", "objective"], trace_rows)
    _write_json(out / "hypervolume.json", {
        "hypervolume": hv, "reference": list(reference),
        "episodes": len(records), "front_size": len(front),
        "total_iterations": total_iters})
    log.info("moes[%s]: %d episodes, %d iterations, front %d, hypervolume %.4f",
             mode, len(records), total_iters, len(front), hv)
    return {"hypervolume": hv, "episodes": len(records),
            "total_iterations": total_iters, "front_size": len(front)}


def cmd_sweep(cfg, out_dir, steps, mode="asles"):
    """One moes run per step size; failures are logged and skipped."""
    if len(steps) < 2:
        raise ConfigError(f"sweep: need at least 2 step values, got {len(steps)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for i, step in enumerate(steps):
        field_name = "d" if mode == "sles" else "d_prime"
        try:
            planner = dataclasses.replace(cfg.planner, **{field_name: step})
            sub = dataclasses.replace(cfg, planner=planner)
            result = cmd_moes(sub, out / f"step_{i:02d}", mode)
        except Exception:
            log.exception("sweep: run %d (step %s) failed; continuing", i, step)
            continue
        rows.append([step, result["hypervolume"], result["episodes"],
                     result["total_iterations"]])
    _write_csv(out / "sweep.csv",
               ["step", "hypervolume", "episodes", "total_iterations"], rows)
    return rows


def cmd_hv(front_path, reference, out_path=None):
    """Hypervolume of a front CSV (e_* columns, or all columns if unnamed)."""
    _, vectors, _ = load_front_csv(front_path)
    if reference is None:
        reference = (1.0,) * vectors.shape[1]
    hv = metrics.hypervolume(list(vectors), reference)
    if out_path:
        _write_json(Path(out_path), {"hypervolume": hv, "reference": list(reference),
                                     "points": int(vectors.shape[0])})
    print(_fmt(hv))
    return hv


def cmd_dist(cfg, out_dir=None):
    """Pairwise map distance table (weighted squared coefficient gaps)."""
    basis, maps, _ = resolve_maps(cfg)
    family = MapFamily(tuple(maps), basis)
    table = family.distances
    m = len(family)
    header = ["map"] + [f"d_{j}" for j in range(m)]
    rows = [[i, *table[i]] for i in range(m)]
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        _write_csv(out / "distance_table.csv", header, rows)
    writer = sys.stdout
    writer.write(",".join(header) + "\n")
    for row in rows:
        writer.write(",".join(_fmt(v) for v in row) + "\n")
    return table


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="moesearch",
        description="Multi-objective ergodic search experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, mode_flag=False):
        p.add_argument("--config", required=True, help="experiment config JSON")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override config seed")
        if mode_flag:
            p.add_argument("--mode", choices=MODES, default="sles",
                           help="planner variant (default sles)")

    p_plan = sub.add_parser("plan", help="single scalarized coverage run")
    add_common(p_plan)

    p_moes = sub.add_parser("moes", help="full planner run with evaluation")
    add_common(p_moes, mode_flag=True)

    p_sweep = sub.add_parser("sweep", help="planner runs over step sizes")
    add_common(p_sweep)
    p_sweep.add_argument("--mode", choices=MODES, default="asles",
                         help="planner variant (default asles)")
    p_sweep.add_argument("--steps", type=float, nargs="+", required=True,
                         help="two or more lattice step sizes")

    p_hv = sub.add_parser("hv", help="hypervolume of a front CSV")
    p_hv.add_argument("front", help="front CSV path")
    p_hv.add_argument("--ref", type=float, nargs="+", default=None,
                      help="reference point (default all ones)")
    p_hv.add_argument("--out", default=None, help="optional summary JSON path")

    p_dist = sub.add_parser("dist", help="pairwise map distance table")
    p_dist.add_argument("--config", required=True, help="experiment config JSON")
    p_dist.add_argument("--out", default=None, help="optional output directory")
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "hv":
            cmd_hv(args.front, tuple(args.ref) if args.ref else None, args.out)
            return 0
        cfg = load_config(args.config)
        if getattr(args, "seed", None) is not None:
            cfg = dataclasses.replace(cfg, seed=args.seed)
        if args.command == "plan":
            cmd_plan(cfg, args.out)
        elif args.command == "moes":
            cmd_moes(cfg, args.out, args.mode)
        elif args.command == "sweep":
            cmd_sweep(cfg, args.out, args.steps, args.mode)
        elif args.command == "dist":
            cmd_dist(cfg, args.out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
