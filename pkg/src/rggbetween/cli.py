"""Command-line entry point.

Exit status: 0 on success, 2 for configuration errors, 3 for numeric or
domain errors.  Failures print one JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from . import csvio
from .analytic import DiskContinuum, g_disk, g_star
from .apps import DEFAULT_THRESHOLD, detect_boundary, elect_cluster_heads
from .centrality import betweenness_brandes, normalize
from .config import (
    domain_from_settings,
    experiment_from_settings,
    get_float,
    get_int,
    load_config,
    resolve,
)
from .errors import ConfigError, RGGError
from .experiment import THRESHOLD, compare_to_continuum, convergence_study, run_density
from .geometry import sample_uniform
from .quadrature import DEFAULT_M, field, grid_points
from .rgg import Graph, HardDisk, SoftExponential, beta_connectivity_threshold, connect, node_count
from .rng import stream

log = logging.getLogger("rggbetween")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def _domain_flags(p):
    p.add_argument("--config", help="key = value config file or run.json manifest")
    p.add_argument("--domain", choices=["disk", "square", "triangle", "holed-square"])
    p.add_argument("--radius", type=float)
    p.add_argument("--side", type=float)
    p.add_argument("--holes", help="hole list 'cx,cy,r; cx,cy,r'")


def _settings(args, **extra) -> dict:
    file_values = load_config(args.config) if getattr(args, "config", None) else None
    flags = {k: getattr(args, k, None) for k in ("domain", "radius", "side", "holes", "seed")}
    flags.update(extra)
    return resolve(file_values, flags)


def _graph_from_files(args) -> Graph:
    return Graph(csvio.read_points(args.points), csvio.read_edges(args.edges))


def cmd_sample(args):
    s = _settings(args, rho=args.rho)
    d = domain_from_settings(s)
    rho = get_float(s, "rho")
    if not rho > 0:
        raise ConfigError("rho must be positive")
    pts = sample_uniform(d, node_count(d, rho), stream(get_int(s, "seed")))
    csvio.write_points(args.out, pts)


def cmd_graph(args):
    s = _settings(args, beta_mode=args.beta_mode, beta=args.beta, eta=args.eta, r0=args.r0)
    pts = csvio.read_points(args.points)
    rng = stream(get_int(s, "seed"))
    eta = get_float(s, "eta")
    if s["beta_mode"] == THRESHOLD:
        beta, g = beta_connectivity_threshold(pts, eta, rng)
        model = {"model": "soft", "beta": beta, "eta": eta, "beta_mode": THRESHOLD}
    else:
        if s.get("r0"):
            m = HardDisk(get_float(s, "r0"))
            model = {"model": "hard", "r0": m.r0}
        else:
            m = SoftExponential(get_float(s, "beta"), eta)
            model = {"model": "soft", "beta": m.beta, "eta": eta, "beta_mode": "fixed"}
        g = connect(pts, m, rng)
    csvio.write_edges(args.out, g.edges)
    if args.manifest:
        csvio.write_manifest(args.manifest, {"command": "graph", "settings": s, "version": __version__, **model})
    log.info("graph: %d nodes, %d edges, %s", g.n, len(g.edges), model)


def cmd_bc(args):
    g = _graph_from_files(args)
    raw = betweenness_brandes(g)
    pair = normalize(raw).values if g.n >= 3 else np.full(g.n, np.nan)
    csvio.write_csv(args.out, csvio.BETWEENNESS_HEADER, zip(range(g.n), raw.values, pair))


def cmd_analytic(args):
    R = args.radius
    if args.eps is not None:
        eps = np.array(args.eps, dtype=float)
    else:
        eps = np.linspace(0.0, 1.0, int(round(1.0 / args.eps_step)) + 1)
    dc = DiskContinuum(R)
    csvio.write_csv(args.out, csvio.ANALYTIC_HEADER, zip(eps, g_star(eps), g_disk(dc, eps * R)))


def cmd_field(args):
    s = _settings(args, grid_step=args.grid_step, quadrature_points=args.quadrature_points)
    d = domain_from_settings(s)
    pts = grid_points(d, get_float(s, "grid_step"))
    f = field(d, pts, get_int(s, "quadrature_points"), workers=args.workers)
    csvio.write_csv(args.out, csvio.FIELD_HEADER,
                    zip(f.points[:, 0], f.points[:, 1], f.g_values, f.g_star_values))


def _experiment_settings(args, **extra):
    return _settings(args, realizations=args.realizations, bins=args.bins, eta=args.eta,
                     beta_mode=args.beta_mode, beta=args.beta, min_count=args.min_count, **extra)


def _profile_rows(p):
    return zip(p.bin_centers, p.mean_gamma, p.normalized, p.counts, p.stderr)


def _manifest(command, s, cfg, started, extra):
    return {
        "command": command,
        "settings": s,
        "seed": cfg.master_seed,
        "version": __version__,
        "wall_time_s": round(time.time() - started, 3),
        "conventions": {
            "beta": "per-realization connectivity threshold" if cfg.beta_mode == THRESHOLD else "fixed",
            "bins": f"{cfg.bins} equal-width bins of eps/R over [0, 1]",
            "normalization": "mean betweenness divided by the largest bin mean",
            "norms": f"bins with count >= {cfg.min_count}; l2 is root-mean-square",
        },
        **extra,
    }


def _beta_summary(p):
    return {"min": float(p.betas.min()), "median": float(np.median(p.betas)), "max": float(p.betas.max())}


def cmd_profile(args):
    started = time.time()
    s = _experiment_settings(args, densities=args.rho)
    cfg = experiment_from_settings(s)
    rho = cfg.densities[0]
    p = run_density(cfg, rho, stream_index=0, workers=args.workers)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    csvio.write_csv(out / "profile.csv", csvio.PROFILE_HEADER, _profile_rows(p))
    extra = {"rho": rho, "n_nodes": p.n_nodes, "beta": _beta_summary(p), "all_connected": p.all_connected}
    try:
        cmp = compare_to_continuum(p, cfg.min_count)
        extra.update(linf=cmp.linf, l2=cmp.l2)
    except RGGError:
        pass
    csvio.write_manifest(out / "run.json", _manifest("profile", s, cfg, started, extra))


def cmd_converge(args):
    started = time.time()
    s = _experiment_settings(args, densities=args.densities)
    cfg = experiment_from_settings(s)
    table = convergence_study(cfg, workers=args.workers)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    csvio.write_csv(out / "convergence.csv", csvio.CONVERGENCE_HEADER,
                    ((r.rho, r.realizations, r.linf, r.l2) for r in table.rows))
    for p in table.profiles:
        csvio.write_csv(out / f"profile_rho{p.rho:g}.csv", csvio.PROFILE_HEADER, _profile_rows(p))
    extra = {
        "strictly_decreasing": table.strictly_decreasing,
        "beta": {f"{p.rho:g}": _beta_summary(p) for p in table.profiles},
    }
    csvio.write_manifest(out / "run.json", _manifest("converge", s, cfg, started, extra))


def cmd_boundary(args):
    g = _graph_from_files(args)
    bp = detect_boundary(g, DiskContinuum(args.radius), args.threshold)
    csvio.write_csv(args.out, csvio.BOUNDARY_HEADER,
                    zip(range(g.n), bp.eps, bp.g_star_est, bp.gamma_norm, bp.is_boundary_pos, bp.is_boundary_meas))


def cmd_heads(args):
    g = _graph_from_files(args)
    gamma = betweenness_brandes(g).values
    heads = elect_cluster_heads(g, args.k, args.mode, gamma=gamma)
    csvio.write_csv(args.out, csvio.HEADS_HEADER, ((r + 1, i, gamma[i]) for r, i in enumerate(heads)))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rggbc", description="Betweenness centrality in random geometric graphs")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="uniform node positions -> points.csv")
    _domain_flags(p)
    p.add_argument("--rho", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default="points.csv")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("graph", help="link a point set -> edges.csv")
    p.add_argument("--config")
    p.add_argument("--points", default="points.csv")
    p.add_argument("--beta-mode", choices=["fixed", "threshold"])
    p.add_argument("--beta", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--r0", type=float, help="hard-disk range (overrides beta)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default="edges.csv")
    p.add_argument("--manifest", default="graph.json")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("bc", help="betweenness of a stored graph -> betweenness.csv")
    p.add_argument("--points", default="points.csv")
    p.add_argument("--edges", default="edges.csv")
    p.add_argument("--out", default="betweenness.csv")
    p.set_defaults(func=cmd_bc)

    p = sub.add_parser("analytic", help="closed-form disk curve -> analytic.csv")
    p.add_argument("--eps", type=float, nargs="+", help="explicit eps values (units of R)")
    p.add_argument("--eps-step", type=float, default=0.001)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--out", default="analytic.csv")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("field", help="continuum betweenness on a grid -> field.csv")
    _domain_flags(p)
    p.add_argument("--grid-step", type=float, default=0.05)
    p.add_argument("--quadrature-points", type=int, default=DEFAULT_M)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="field.csv")
    p.set_defaults(func=cmd_field)

    for name, fn, helptext in (
        ("profile", cmd_profile, "Monte Carlo radial profile -> profile.csv, run.json"),
        ("converge", cmd_converge, "density ladder -> convergence.csv, run.json"),
    ):
        p = sub.add_parser(name, help=helptext)
        _domain_flags(p)
        if name == "profile":
            p.add_argument("--rho", type=float)
        else:
            p.add_argument("--densities", type=float, nargs="+")
        p.add_argument("--realizations", type=int)
        p.add_argument("--bins", type=int)
        p.add_argument("--eta", type=float)
        p.add_argument("--beta-mode", choices=["fixed", "threshold"])
        p.add_argument("--beta", type=float)
        p.add_argument("--min-count", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--outdir", default=".")
        p.set_defaults(func=fn)

    p = sub.add_parser("boundary", help="boundary detection -> boundary.csv")
    p.add_argument("--points", default="points.csv")
    p.add_argument("--edges", default="edges.csv")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--out", default="boundary.csv")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("heads", help="cluster-head election -> heads.csv")
    p.add_argument("--points", default="points.csv")
    p.add_argument("--edges", default="edges.csv")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mode", choices=["max", "min"], default="max")
    p.add_argument("--out", default="heads.csv")
    p.set_defaults(func=cmd_heads)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        args.func(args)
    except ConfigError as exc:
        return _fail("config", str(exc), 2)
    except RGGError as exc:
        return _fail(type(exc).__name__, str(exc), 3)
    except (ValueError, OSError) as exc:
        return _fail("config", str(exc).splitlines()[0] if str(exc) else type(exc).__name__, 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
