"""Reproducible command-line front end.

Every subcommand resolves a v1 JSON config (defaults, then file, then
flags), stamps its outputs with the tool version, the resolved-config hash,
and the seed, and exits 0 only when its numerical checks pass.  Exit codes:
0 all checks pass, 1 a numerical check failed, 2 config or domain error.

Reruns with identical config and seed write byte-identical CSV/JSON; SVG
figures (written only with --svg) sit alongside the delimited output.
"""

import argparse
import copy
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .collar import (
    DELTA_MAX,
    CollarParams,
    conformal_factor,
    dz2_norms,
    half_width,
    rho_at_thin_edge,
    thin_threshold,
)
from .cauchy import cauchy_reconstruct, remark_checks
from .fields import dbar, field_to_dict
from .lab import (
    MaximizeConfig,
    alpha_constant_sweep,
    decay_fit,
    instantiate_spec,
    draw_field_spec,
    maximize_ratio,
    rayleigh_surrogate,
    thin_mass_sweep,
)
from .reporting import config_hash, render_lines, write_csv, write_json
from .surfaces import FlatTorus, TorusField, shear_mode, sphere_ratio, torus_l1_parts, torus_ratio

CONFIG_VERSION = "v1"


class ConfigError(Exception):
    pass


DEFAULTS: dict[str, dict] = {
    "geom": {
        "geometry": {"ell_min": 1e-3, "ell_max": 1.0, "ell_points": 25, "delta_points": 9},
        "discretization": {"s_samples": 2001},
        "tolerances": {"identity": 1e-12, "l1": 1e-10},
    },
    "cauchy-check": {
        "geometry": {"ell_grid": [0.05, 0.1, 0.19, 0.3], "delta0": 0.1},
        "discretization": {"n_modes": 5, "n_nodes": 96, "cheb_degree": 4, "resolution": 1.0},
        "sweep": {"fields": 2, "samples_per_field": 4},
        "tolerances": {"reconstruction": 1e-4, "comparability": 2.0, "inverse_gap": 3.0},
    },
    "torus-sweep": {
        "geometry": {"a": 0.0, "b_grid": [5.0, 10.0, 20.0, 50.0, 100.0]},
        "discretization": {"mesh": 256},
        "tolerances": {"ratio": 0.01, "slope": 0.02},
    },
    "sphere-check": {
        "discretization": {"n_u": 512, "n_theta": 64},
        "tolerances": {"oracle": 1e-8, "truncation": 1e-9},
    },
    "decay-fit": {
        "geometry": {"ell": 0.05, "delta_min": 0.05, "delta_max": 0.5, "delta_points": 10},
        "discretization": {"n_nodes": 512, "sup_samples": 800},
        "sweep": {"mode_set": [1]},
        "tolerances": {"slope_dev": 0.10},
    },
    "collar-alpha": {
        "geometry": {"ell_grid": [0.05, 0.1, 0.2, 0.4, 0.8]},
        "discretization": {"n_modes": 8, "n_nodes": 96, "cheb_degree": 6},
        "sweep": {"trials": 60, "refinement_check": False},
        "tolerances": {"trend_slope": -0.1, "stability": 0.05},
    },
    "thin-mass": {
        "geometry": {"ell_grid": [0.05, 0.1, 0.2, 0.4, 0.8], "delta_grid": [0.45, 0.6, 0.8]},
        "discretization": {"n_modes": 8, "n_nodes": 96, "cheb_degree": 6},
        "sweep": {"trials": 60, "refinement_check": False},
        "tolerances": {"trend_slope": -0.1, "stability": 0.05},
    },
    "maximize": {
        "geometry": {"ell": 0.3, "delta": 0.45},
        "sweep": {"objective": "alpha"},
        "discretization": {"n_modes": 4, "n_nodes": 48, "cheb_degree": 6,
                           "max_iters": 8000, "restarts": 2, "patience": 120},
        "tolerances": {"orthogonality": 1e-10},
    },
    "verify-all": {
        "sweep": {"trials": 40},
    },
}

CHECK_TAGS = {
    "geom": "collar-identities",
    "cauchy-check": "cauchy-reconstruction-and-rectangle-geometry",
    "torus-sweep": "torus-nonuniformity",
    "sphere-check": "sphere-ratio-bound",
    "decay-fit": "collar-decay-rate",
    "collar-alpha": "mean-value-bound",
    "thin-mass": "thin-mass-bound",
    "maximize": "adversarial-ratio-search",
    "verify-all": "full-suite",
}


def _merge(base: dict, override: dict, path="") -> dict:
    out = copy.deepcopy(base)
    for key, val in override.items():
        where = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(f"unknown config key: {where}")
        if isinstance(base[key], dict):
            if not isinstance(val, dict):
                raise ConfigError(f"config key {where} must be an object")
            out[key] = _merge(base[key], val, where)
        else:
            out[key] = val
    return out


def resolve_config(command: str, file_config: dict | None, seed: int, out: str,
                   svg: bool, threads: int) -> dict:
    base = {
        "version": CONFIG_VERSION,
        "command": command,
        "seed": seed,
        "svg": svg,
        "threads": threads,
        **copy.deepcopy(DEFAULTS.get(command, {})),
    }
    if file_config is not None:
        version = file_config.get("version", CONFIG_VERSION)
        if version != CONFIG_VERSION:
            raise ConfigError(f"unsupported config version {version!r} (expected {CONFIG_VERSION!r})")
        body = {k: v for k, v in file_config.items() if k != "version"}
        if "command" in body and body["command"] != command:
            raise ConfigError(f"config is for command {body['command']!r}, not {command!r}")
        body.pop("command", None)
        base = _merge(base, body)
    base["out"] = out
    return base


def _config_digest(cfg: dict) -> tuple[dict, str]:
    # out/threads/svg steer execution, not numerics; identical digests must
    # mean identical numerical content
    digest_cfg = {k: v for k, v in cfg.items() if k not in ("out", "threads", "svg")}
    return digest_cfg, config_hash(digest_cfg)


def _csv_meta(cfg: dict) -> dict:
    _, digest = _config_digest(cfg)
    return {"tool": f"collarlab {__version__}", "check": CHECK_TAGS[cfg["command"]],
            "seed": cfg["seed"], "config_hash": digest}


def _summary(cfg: dict, results: dict, passed: bool, assumptions: list[str] | None = None) -> dict:
    digest_cfg, digest = _config_digest(cfg)
    doc = {
        "tool": "collarlab",
        "version": __version__,
        "command": cfg["command"],
        "check": CHECK_TAGS[cfg["command"]],
        "seed": cfg["seed"],
        "config": digest_cfg,
        "config_hash": digest,
        "results": results,
        "pass": bool(passed),
    }
    if assumptions:
        doc["assumptions"] = assumptions
    return doc


def _emit(cfg: dict, name: str, summary: dict) -> None:
    write_json(Path(cfg["out"]) / f"{name}.json", summary)
    status = "PASS" if summary["pass"] else "FAIL"
    print(f"{status} {cfg['command']}: {CHECK_TAGS[cfg['command']]}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def run_geom(cfg: dict) -> bool:
    g, tol = cfg["geometry"], cfg["tolerances"]
    ells = np.geomspace(g["ell_min"], g["ell_max"], g["ell_points"])
    rows = []
    worst_identity = 0.0
    worst_sup = 0.0
    edge_ratios = []
    for ell in ells:
        X = half_width(ell)
        norms = dz2_norms(ell)
        deltas = 0.5 * ell + np.linspace(0.02, 0.99, g["delta_points"]) * (DELTA_MAX - 0.5 * ell)
        resid = 0.0
        for d in deltas:
            tp = thin_threshold(ell, d)
            lhs = conformal_factor(ell, tp.x_delta)
            rhs = rho_at_thin_edge(ell, d)
            resid = max(resid, abs(lhs - rhs) / rhs)
            edge_ratios.append(max(lhs / d, d / lhs))
        s = np.linspace(-X * (1 - 1e-9), X * (1 - 1e-9), cfg["discretization"]["s_samples"])
        sup = float(np.max(conformal_factor(ell, s) * (X - np.abs(s))))
        worst_identity = max(worst_identity, resid)
        worst_sup = max(worst_sup, sup)
        rows.append({
            "ell": float(ell), "half_width": X, "l1_dz2": norms.l1,
            "l2sq_dz2": norms.l2_squared, "l2sq_scaled": norms.l2_squared * ell**3,
            "identity_residual": resid, "sup_rho_distance": sup,
        })
    scaled = [r["l2sq_scaled"] for r in rows]
    passed = (
        worst_identity <= tol["identity"]
        and worst_sup <= math.pi / 2 * (1 + 1e-12)
        and all(abs(r["l1_dz2"] - 8 * math.pi * r["half_width"]) <= tol["l1"] * r["l1_dz2"] for r in rows)
        and min(scaled) > 1e2 and max(scaled) < 1e6
    )
    header = ["ell", "half_width", "l1_dz2", "l2sq_dz2", "l2sq_scaled",
              "identity_residual", "sup_rho_distance"]
    write_csv(Path(cfg["out"]) / "geom.csv", header, rows, meta=_csv_meta(cfg))
    results = {
        "worst_identity_residual": worst_identity,
        "worst_sup_rho_distance": worst_sup,
        "sup_bound": math.pi / 2,
        "l2sq_scaled_range": [min(scaled), max(scaled)],
        "rho_edge_vs_delta_constant": max(edge_ratios),
    }
    summary = _summary(cfg, results, passed)
    _emit(cfg, "geom", summary)
    if cfg["svg"]:
        render_lines(Path(cfg["out"]) / "geom.svg", [r["ell"] for r in rows],
                     {"l2sq * ell^3": scaled}, "ell", "l2sq * ell^3",
                     "size of dz^2 against the degeneration rate")
    return passed


def run_cauchy_check(cfg: dict) -> bool:
    g, d, sw, tol = cfg["geometry"], cfg["discretization"], cfg["sweep"], cfg["tolerances"]
    rows = []
    reports = []
    passed = True
    for ell in g["ell_grid"]:
        collar = CollarParams.from_length(ell)
        worst = 0.0
        for f_idx in range(sw["fields"]):
            rng = np.random.default_rng((cfg["seed"], int(ell * 1e6), f_idx))
            spec = draw_field_spec(rng, d["n_modes"], d["cheb_degree"])
            psi = instantiate_spec(spec, collar, d["n_nodes"])
            dpsi = dbar(psi)
            sup = float(np.max(np.abs(psi.field.values())))
            s_cap = _safe_s_range(collar, psi)
            for _ in range(sw["samples_per_field"]):
                s0 = rng.uniform(-s_cap, s_cap)
                t0 = rng.uniform(0.0, 2 * math.pi)
                b = rng.uniform(0.0, 2 * math.pi)
                br = cauchy_reconstruct(psi, (s0, t0), b, resolution=d["resolution"], dpsi=dpsi)
                err = abs(br.reconstructed - psi.field.evaluate(s0, t0)) / sup
                worst = max(worst, err)
        report = remark_checks(collar, delta0=g["delta0"],
                               comparability_bound=tol["comparability"],
                               inverse_gap_bound=tol["inverse_gap"])
        reports.append(report.to_dict())
        row = {"ell": float(ell), "max_reconstruction_err": worst,
               "thin_part_empty": report.empty, "remark_pass": report.passed}
        for check in report.checks:
            row[check.name] = check.max_constant
        rows.append(row)
        passed = passed and worst <= tol["reconstruction"] and report.passed
    header = sorted({k for row in rows for k in row}, key=lambda k: (k != "ell", k))
    full_rows = [{h: row.get(h, "") for h in header} for row in rows]
    write_csv(Path(cfg["out"]) / "cauchy_check.csv", header, full_rows, meta=_csv_meta(cfg))
    results = {"rows": full_rows, "tolerance": tol["reconstruction"],
               "rectangle_reports": reports}
    summary = _summary(cfg, results, passed)
    _emit(cfg, "cauchy_check", summary)
    if cfg["svg"]:
        render_lines(Path(cfg["out"]) / "cauchy_check.svg", [r["ell"] for r in rows],
                     {"max reconstruction error": [r["max_reconstruction_err"] for r in rows]},
                     "ell", "relative error", "pointwise Cauchy reconstruction", logy=True)
    return passed


def _safe_s_range(collar: CollarParams, psi) -> float:
    lo, hi = psi.support
    limit = 0.95 * hi

    def reach(s):
        return s + conformal_factor(collar.ell, s) ** -0.5

    s = np.linspace(0.0, limit, 512)
    ok = s[reach(s) <= limit]
    return float(ok[-1]) if len(ok) else 0.0


def run_torus_sweep(cfg: dict) -> bool:
    g, d, tol = cfg["geometry"], cfg["discretization"], cfg["tolerances"]
    rows = []
    worst_dev = 0.0
    for b in g["b_grid"]:
        torus = FlatTorus(a=g["a"], b=float(b))
        fld = TorusField.from_function(torus, shear_mode(torus), m=d["mesh"])
        l1_res, dbar_l1 = torus_l1_parts(fld)
        ratio = torus_ratio(fld)
        exact = b / (math.sqrt(2.0) * math.pi)
        worst_dev = max(worst_dev, abs(ratio - exact) / exact)
        rows.append({"a": g["a"], "b": float(b), "mode_description": "sin(2*pi*x/b)",
                     "l1_residual": l1_res, "dbar_l1": dbar_l1, "ratio": ratio})
    bs = [r["b"] for r in rows]
    slope = float(np.polyfit(bs, [r["ratio"] for r in rows], 1)[0])
    slope_exact = 1.0 / (math.sqrt(2.0) * math.pi)
    slope_dev = abs(slope - slope_exact) / slope_exact
    passed = worst_dev <= tol["ratio"] and slope_dev <= tol["slope"]
    write_csv(Path(cfg["out"]) / "torus_sweep.csv",
              ["a", "b", "mode_description", "l1_residual", "dbar_l1", "ratio"], rows,
              meta=_csv_meta(cfg))
    results = {"worst_ratio_deviation": worst_dev, "slope": slope,
               "slope_exact": slope_exact, "slope_deviation": slope_dev,
               "ratios": {str(r["b"]): r["ratio"] for r in rows}}
    summary = _summary(cfg, results, passed)
    _emit(cfg, "torus_sweep", summary)
    if cfg["svg"]:
        render_lines(Path(cfg["out"]) / "torus_sweep.svg", bs,
                     {"measured": [r["ratio"] for r in rows],
                      "b/(sqrt(2)*pi)": [b * slope_exact for b in bs]},
                     "b", "ratio", "torus ratio growth along the degenerating family")
    return passed


def run_sphere_check(cfg: dict) -> bool:
    from scipy.integrate import quad
    from scipy.special import i0

    d, tol = cfg["discretization"], cfg["tolerances"]

    # (field, analytic derivative, theta-averaged |psi| and |dbar psi| profiles)
    fields = {
        "gaussian": (
            lambda z: np.exp(-np.abs(z) ** 2),
            lambda z: -z * np.exp(-np.abs(z) ** 2),
            lambda r: math.exp(-r * r),
            lambda r: r * math.exp(-r * r),
        ),
        "shifted_gaussian": (
            lambda z: np.exp(z - np.abs(z) ** 2),
            lambda z: -z * np.exp(z - np.abs(z) ** 2),
            lambda r: math.exp(-r * r) * i0(r),
            lambda r: r * math.exp(-r * r) * i0(r),
        ),
    }
    rows = []
    passed = True
    for name, (psi, dpsi, mod_profile, der_profile) in fields.items():
        ratio = sphere_ratio(psi, dpsi, n_u=d["n_u"], n_theta=d["n_theta"])
        coarse = sphere_ratio(psi, dpsi, n_u=d["n_u"], n_theta=d["n_theta"],
                              u_max=math.pi - 0.1)
        num, _ = quad(lambda r: 2 * 2 * math.pi * mod_profile(r) * r, 0, 60, limit=500)
        den, _ = quad(lambda r: math.sqrt(2) * 2 * math.pi * (1 + r * r) * der_profile(r) * r,
                      0, 60, limit=500)
        oracle = num / den
        dev = abs(ratio - oracle) / oracle
        trunc = abs(ratio - coarse) / ratio
        rows.append({"field": name, "ratio": ratio, "oracle": oracle,
                     "oracle_deviation": dev, "truncation_deviation": trunc})
        passed = passed and dev <= tol["oracle"] and trunc <= tol["truncation"]
    write_csv(Path(cfg["out"]) / "sphere_check.csv",
              ["field", "ratio", "oracle", "oracle_deviation", "truncation_deviation"], rows,
              meta=_csv_meta(cfg))
    results = {"rows": rows}
    summary = _summary(cfg, results, passed)
    _emit(cfg, "sphere_check", summary)
    if cfg["svg"]:
        u_edges = [math.pi - e for e in (0.4, 0.3, 0.2, 0.1, 0.05, 0.02)]
        series = {name: [sphere_ratio(f[0], f[1], n_u=d["n_u"], n_theta=d["n_theta"], u_max=u)
                         for u in u_edges] for name, f in fields.items()}
        render_lines(Path(cfg["out"]) / "sphere_check.svg",
                     [math.tan(u / 2) for u in u_edges], series,
                     "truncation radius", "ratio", "sphere ratio under radial truncation")
    return passed


def run_decay_fit(cfg: dict) -> bool:
    g, d, sw, tol = cfg["geometry"], cfg["discretization"], cfg["sweep"], cfg["tolerances"]
    deltas = np.linspace(g["delta_min"], g["delta_max"], g["delta_points"])
    res = decay_fit(g["ell"], deltas, tuple(sw["mode_set"]),
                    n_nodes=d["n_nodes"], n_sup=d["sup_samples"])
    dev = abs(res.slope + math.pi) / math.pi
    passed = dev <= tol["slope_dev"]
    rows = [{"delta": p["delta"], "x_delta": p["x_delta"], "log_r": p["log_r"]}
            for p in res.points]
    write_csv(Path(cfg["out"]) / "decay_fit.csv", ["delta", "x_delta", "log_r"], rows, meta=_csv_meta(cfg))
    results = res.to_dict() | {"slope_target": -math.pi, "slope_deviation": dev}
    summary = _summary(cfg, results, passed)
    _emit(cfg, "decay_fit", summary)
    if cfg["svg"]:
        inv = [1.0 / p["delta"] for p in res.points]
        render_lines(Path(cfg["out"]) / "decay_fit.svg", inv,
                     {"log r": [p["log_r"] for p in res.points],
                      "fit": [res.intercept + res.slope * x for x in inv]},
                     "1/delta", "log r", "thin-part decay of the zero-mean part")
    return passed


def _run_trend_sweep(cfg: dict, kind: str) -> bool:
    g, d, sw, tol = cfg["geometry"], cfg["discretization"], cfg["sweep"], cfg["tolerances"]

    def sweep(n_nodes):
        if kind == "alpha":
            return alpha_constant_sweep(g["ell_grid"], trials=sw["trials"], rng_seed=cfg["seed"],
                                        n_modes=d["n_modes"], cheb_degree=d["cheb_degree"],
                                        n_nodes=n_nodes, threads=cfg["threads"])
        return thin_mass_sweep(g["ell_grid"], g["delta_grid"], trials=sw["trials"],
                               rng_seed=cfg["seed"], n_modes=d["n_modes"],
                               cheb_degree=d["cheb_degree"], n_nodes=n_nodes,
                               threads=cfg["threads"])

    rep = sweep(d["n_nodes"])
    slope = rep.fit["loglog_slope"]
    passed = slope is not None and slope >= tol["trend_slope"]
    results = rep.to_dict()
    if sw["refinement_check"]:
        fine = sweep(2 * d["n_nodes"])
        devs = [abs(a["max_constant"] - b["max_constant"]) / a["max_constant"]
                for a, b in zip(rep.rows, fine.rows)]
        results["refinement_max_dev"] = max(devs)
        passed = passed and max(devs) <= tol["stability"]
    name = "collar_alpha" if kind == "alpha" else "thin_mass"
    header = sorted({k for row in rep.rows for k in row}, key=lambda k: (k != "ell", k))
    write_csv(Path(cfg["out"]) / f"{name}.csv", header,
              [{h: str(row.get(h, "")) if isinstance(row.get(h), list) else row.get(h, "")
                for h in header} for row in rep.rows], meta=_csv_meta(cfg))
    summary = _summary(cfg, results, passed, assumptions=list(rep.assumptions))
    _emit(cfg, name, summary)
    if cfg["svg"]:
        render_lines(Path(cfg["out"]) / f"{name}.svg", [r["ell"] for r in rep.rows],
                     {"max constant": [r["max_constant"] for r in rep.rows]},
                     "ell", "max constant", f"worst observed {kind} constant", logy=True)
    return passed


def run_collar_alpha(cfg: dict) -> bool:
    return _run_trend_sweep(cfg, "alpha")


def run_thin_mass(cfg: dict) -> bool:
    return _run_trend_sweep(cfg, "thin_mass")


def run_maximize(cfg: dict) -> bool:
    g, d, sw, tol = cfg["geometry"], cfg["discretization"], cfg["sweep"], cfg["tolerances"]
    objective = sw["objective"]
    mc = MaximizeConfig(n_modes=d["n_modes"], n_nodes=d["n_nodes"], cheb_degree=d["cheb_degree"],
                        max_iters=d["max_iters"], restarts=d["restarts"], patience=d["patience"],
                        seed=cfg["seed"], delta=g["delta"] if objective == "thin_mass" else None)
    res = maximize_ratio(objective, g["ell"], mc)
    surrogate_val, _ = rayleigh_surrogate(objective, g["ell"], n_modes=d["n_modes"],
                                          n_nodes=d["n_nodes"],
                                          delta=mc.delta)
    from .fields import dz2_field, l2_inner, l2_norm

    one = dz2_field(res.witness.collar, n_nodes=d["n_nodes"])
    orth = abs(l2_inner(res.witness, one)) / (l2_norm(res.witness) * l2_norm(one))
    passed = orth <= tol["orthogonality"] and res.value > 0
    write_json(Path(cfg["out"]) / "maximize_witness.json", field_to_dict(res.witness))
    results = res.to_dict() | {"surrogate_value": surrogate_val,
                               "witness_orthogonality": orth}
    summary = _summary(cfg, results, passed)
    _emit(cfg, "maximize", summary)
    return passed


RUNNERS = {
    "geom": run_geom,
    "cauchy-check": run_cauchy_check,
    "torus-sweep": run_torus_sweep,
    "sphere-check": run_sphere_check,
    "decay-fit": run_decay_fit,
    "collar-alpha": run_collar_alpha,
    "thin-mass": run_thin_mass,
    "maximize": run_maximize,
}


def run_verify_all(cfg: dict) -> bool:
    out_root = Path(cfg["out"])
    all_results = {}
    ok = True
    for command in ("geom", "torus-sweep", "sphere-check", "decay-fit", "cauchy-check",
                    "collar-alpha", "thin-mass", "maximize"):
        sub = resolve_config(command, None, cfg["seed"], str(out_root), cfg["svg"], cfg["threads"])
        if command in ("collar-alpha", "thin-mass"):
            sub["sweep"]["trials"] = cfg["sweep"]["trials"]
        if command == "maximize":
            sub["discretization"]["max_iters"] = 2000
        good = RUNNERS[command](sub)
        all_results[command] = good
        ok = ok and good
    summary = _summary(cfg, {"commands": all_results}, ok)
    write_json(out_root / "verify_all.json", summary)
    print(("PASS" if ok else "FAIL") + " verify-all: full suite")
    return ok


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="collarlab",
        description="numerical checks for collar geometry and quadratic differentials",
    )
    parser.add_argument("command", choices=list(RUNNERS) + ["verify-all"])
    parser.add_argument("--config", type=Path, default=None, help="JSON config (schema v1)")
    parser.add_argument("--seed", type=int, default=20250101)
    parser.add_argument("--out", type=str, default="collarlab-out")
    parser.add_argument("--svg", action="store_true", help="also render SVG figures")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args(argv)

    file_config = None
    if args.config is not None:
        try:
            file_config = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 2
    try:
        cfg = resolve_config(args.command, file_config, args.seed, args.out,
                             args.svg, args.threads)
        if args.command == "verify-all":
            passed = run_verify_all(cfg)
        else:
            passed = RUNNERS[args.command](cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
