"""Batch experiment runner: configs, seeded replication, records, CSV output.

A run is (config, seed) -> RunRecord, reproducible byte-for-byte across
process counts: every random draw is keyed by (seed, point, replicate,
circuit id), replicates fan out to a process pool, and aggregation walks the
results in replicate order.  Records serialize to JSON with a stable key
order; tables are UTF-8 CSV with LF line endings and repr-exact floats.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import fisher
from .estimators import (
    DegenerateCoefficientError,
    EstimateReport,
    FidelityCollapseError,
    estimate_alpha_corrected,
    fourier_estimate,
    peak_fit,
    theta_pd_estimate,
)
from .noise import (
    NoiseConfig,
    confusion_sample_size,
    dem_fidelity,
    simulate_probability_batch,
    stream,
)
from .signal_model import omega_grid, spectrum_from_h
from .su2 import FsimParams

__all__ = [
    "ARTIFACT_VERSION",
    "MODES",
    "FIGURE_IDS",
    "PeakFitConfig",
    "ConfusionCheckConfig",
    "ExperimentConfig",
    "RunRecord",
    "run_replicate",
    "run_calibration",
    "run_sweep",
    "run_crlb_scan",
    "run_alpha_scan",
    "run_confusion_check",
    "emit_figure_data",
    "write_json",
    "write_csv",
    "sweep_rows",
    "alpha_scan_rows",
    "run_mode",
]

ARTIFACT_VERSION = "0.1.0"
SCHEMA_VERSION = 1
MODES = ("calibrate", "sweep-depth", "sweep-shots", "crlb-scan", "alpha-scan", "confusion-check")
FIGURE_IDS = ("mse-vs-depth", "mse-vs-shots", "variance-vs-depth", "crlb-vs-depth", "fidelity-vs-depth")

# Circuit-id blocks keep every random stream in a run distinct.
_LADDER_BASE = 1_000_000
_PEAK_BASE = 2_000_000
_BOOT_BASE = 3_000_000
_CONFUSION_BASE = 5_000_000

_SUMMARY_ESTIMATORS = ("theta_hat", "varphi_hat", "alpha_hat", "theta_corrected", "theta_pd", "theta_pf")


@dataclass(frozen=True)
class PeakFitConfig:
    enabled: bool = True
    n_pf: int = 15
    beta_thr: float | None = None  # None -> pi/(2d)

    def to_dict(self):
        return {"enabled": self.enabled, "n_pf": self.n_pf, "beta_thr": self.beta_thr}


@dataclass(frozen=True)
class ConfusionCheckConfig:
    epsilon: float = 0.05
    alpha: float = 0.1
    trials: int = 2000
    constant: float = 8.0
    shots: int | None = None  # None -> confusion_sample_size

    def to_dict(self):
        return {
            "epsilon": self.epsilon,
            "alpha": self.alpha,
            "trials": self.trials,
            "constant": self.constant,
            "shots": self.shots,
        }


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: mode, true gate angles, grids, noise, and options."""

    mode: str
    gate_truth: FsimParams
    noise: NoiseConfig
    replicates: int = 96
    depth: int | None = None
    depth_grid: tuple | None = None
    shots_grid: tuple | None = None
    peak_fit: PeakFitConfig = PeakFitConfig()
    theta_pd: bool = False
    alpha_correction: bool = True
    confusion_check: ConfusionCheckConfig | None = None
    output_dir: str = "out"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.mode == "calibrate" and (self.depth is None or self.depth < 2):
            raise ValueError("calibrate mode needs depth >= 2")
        if self.mode in ("sweep-depth", "crlb-scan", "alpha-scan") and not self.depth_grid:
            raise ValueError(f"{self.mode} needs a depth_grid")
        if self.mode == "sweep-shots" and (not self.shots_grid or self.depth is None):
            raise ValueError("sweep-shots needs shots_grid and depth")
        if self.mode == "confusion-check" and self.noise.confusion is None:
            raise ValueError("confusion-check needs noise.confusion")

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "mode": self.mode,
            "gate_truth": {
                "theta": self.gate_truth.theta,
                "varphi": self.gate_truth.varphi,
                "chi": self.gate_truth.chi,
            },
            "depth": self.depth,
            "depth_grid": None if self.depth_grid is None else list(self.depth_grid),
            "shots_grid": None if self.shots_grid is None else list(self.shots_grid),
            "replicates": self.replicates,
            "noise": self.noise.to_dict(),
            "peak_fit": self.peak_fit.to_dict(),
            "theta_pd": self.theta_pd,
            "alpha_correction": self.alpha_correction,
            "confusion_check": None if self.confusion_check is None else self.confusion_check.to_dict(),
            "output_dir": self.output_dir,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {
            "schema_version",
            "mode",
            "gate_truth",
            "depth",
            "depth_grid",
            "shots_grid",
            "replicates",
            "noise",
            "peak_fit",
            "theta_pd",
            "alpha_correction",
            "confusion_check",
            "output_dir",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        version = data.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {version}")
        pf = data.get("peak_fit") or {}
        cc = data.get("confusion_check")
        return cls(
            mode=data["mode"],
            gate_truth=FsimParams(**data["gate_truth"]),
            noise=NoiseConfig.from_dict(data.get("noise") or {}),
            replicates=int(data.get("replicates", 96)),
            depth=None if data.get("depth") is None else int(data["depth"]),
            depth_grid=None if data.get("depth_grid") is None else tuple(int(d) for d in data["depth_grid"]),
            shots_grid=None if data.get("shots_grid") is None else tuple(int(m) for m in data["shots_grid"]),
            peak_fit=PeakFitConfig(**pf),
            theta_pd=bool(data.get("theta_pd", False)),
            alpha_correction=bool(data.get("alpha_correction", True)),
            confusion_check=None if cc is None else ConfusionCheckConfig(**cc),
            output_dir=data.get("output_dir", "out"),
        )

    @classmethod
    def from_json_file(cls, path: str) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class RunRecord:
    """Outcome of one (config, seed) run at one grid point."""

    mode: str
    seed: int
    point_index: int
    grid_value: float | int | None
    config: dict
    summary: dict
    failures: list
    replicates: list
    artifact_version: str = ARTIFACT_VERSION
    wall_clock_seconds: float = 0.0  # kept off the canonical JSON for byte determinism

    def to_json_dict(self) -> dict:
        return {
            "artifact_version": self.artifact_version,
            "mode": self.mode,
            "seed": self.seed,
            "point_index": self.point_index,
            "grid_value": self.grid_value,
            "config": self.config,
            "summary": self.summary,
            "failures": self.failures,
            "replicates": self.replicates,
        }


def run_replicate(config: ExperimentConfig, *, point: int = 0, replicate: int = 0) -> EstimateReport:
    """Full single-replicate pipeline at config.depth.

    Simulates the 2(2d-1) grid circuits, reconstructs h, applies the Fourier
    estimators, then (as configured) the fidelity correction, the
    progressive-difference ladder and the peak fit, both using varphi_hat as
    the a-priori phase.
    """
    d = config.depth
    params, noise = config.gate_truth, config.noise
    grid = omega_grid(d)
    n = len(grid)
    px = simulate_probability_batch(
        d, grid, params, noise, "plus", point=point, replicate=replicate, circuit_ids=2 * np.arange(n)
    )
    py = simulate_probability_batch(
        d, grid, params, noise, "i", point=point, replicate=replicate, circuit_ids=2 * np.arange(n) + 1
    )
    spectrum = spectrum_from_h(px - 0.5 + 1j * (py - 0.5), d)
    report = fourier_estimate(spectrum, noise.shots)
    if config.alpha_correction and d >= 3:
        try:
            alpha_hat, theta_corr = estimate_alpha_corrected(spectrum)
            report.alpha_hat = alpha_hat
            report.diagnostics["theta_corrected"] = theta_corr
        except FidelityCollapseError as exc:
            report.warnings.append(str(exc))
    phi_pri = report.varphi_hat
    if config.theta_pd:
        amps = []
        for li, depth_j in enumerate(range(d, 3 * d + 1, 2)):
            pxl = simulate_probability_batch(
                depth_j, [phi_pri], params, noise, "plus",
                point=point, replicate=replicate, circuit_ids=[_LADDER_BASE + 2 * li],
            )
            pyl = simulate_probability_batch(
                depth_j, [phi_pri], params, noise, "i",
                point=point, replicate=replicate, circuit_ids=[_LADDER_BASE + 2 * li + 1],
            )
            amps.append(math.hypot(pxl[0] - 0.5, pyl[0] - 0.5))
        theta_pd, var_pd, budget = theta_pd_estimate(amps, d, noise.shots, var_phi_pri=report.var_theory_varphi)
        report.theta_pd = theta_pd
        report.diagnostics["theta_pd_var_theory"] = var_pd
        report.diagnostics["theta_pd_bias_budget"] = budget
    if config.peak_fit.enabled:
        n_pf = config.peak_fit.n_pf
        local = phi_pri + (np.pi / d) * (np.arange(n_pf) / (n_pf - 1) - 0.5)
        pxp = simulate_probability_batch(
            d, local, params, noise, "plus",
            point=point, replicate=replicate, circuit_ids=_PEAK_BASE + 2 * np.arange(n_pf),
        )
        pyp = simulate_probability_batch(
            d, local, params, noise, "i",
            point=point, replicate=replicate, circuit_ids=_PEAK_BASE + 2 * np.arange(n_pf) + 1,
        )
        result = peak_fit(local, np.hypot(pxp - 0.5, pyp - 0.5), d, phi_pri, config.peak_fit.beta_thr)
        report.theta_pf = result.theta_pf
        report.diagnostics["peak_fit"] = {
            "beta0": result.beta0,
            "beta1": result.beta1,
            "beta2": result.beta2,
            "accepted": result.accepted,
        }
    return report


def _replicate_task(args):
    cfg_dict, point, replicate = args
    config = ExperimentConfig.from_dict(cfg_dict)
    try:
        return replicate, run_replicate(config, point=point, replicate=replicate).to_json_dict(), None
    except (DegenerateCoefficientError, FidelityCollapseError, ValueError) as exc:
        return replicate, None, f"{type(exc).__name__}: {exc}"


def _varphi_residual(est: float, truth: float) -> float:
    # The phase is identifiable mod pi; compare on the centered branch.
    return math.remainder(est - truth, math.pi)


def _estimator_values(name: str, reports: list[dict]):
    if name == "theta_corrected":
        vals = [(i, r["diagnostics"].get("theta_corrected")) for i, r in enumerate(reports)]
    else:
        vals = [(i, r.get(name)) for i, r in enumerate(reports)]
    return [(i, v) for i, v in vals if v is not None]


def _truth_for(name: str, config: ExperimentConfig) -> float:
    if name == "varphi_hat":
        return config.gate_truth.varphi
    if name == "alpha_hat":
        if config.noise.depol_rate > 0.0 and config.depth is not None:
            # X-circuit gate count; the Y circuit differs by one gate, O(r).
            return dem_fidelity(config.noise.depol_rate, 2 * config.depth + 5)
        return 1.0
    return config.gate_truth.theta


def _summarize(config: ExperimentConfig, reports: list[dict], point: int) -> dict:
    summary = {}
    for slot, name in enumerate(_SUMMARY_ESTIMATORS):
        pairs = _estimator_values(name, reports)
        if not pairs:
            continue
        truth = _truth_for(name, config)
        vals = np.array([v for _, v in pairs], dtype=float)
        if name == "varphi_hat":
            res = np.array([_varphi_residual(v, truth) for v in vals])
        else:
            res = vals - truth
        bias = float(res.mean())
        mse = float((res**2).mean())
        var = float(((res - bias) ** 2).mean())
        rng = stream(config.noise.seed, point, _BOOT_BASE + slot)
        boot = np.empty(1000)
        sq = res**2
        for b in range(1000):
            boot[b] = sq[rng.integers(0, len(sq), size=len(sq))].mean()
        entry = {
            "n": len(vals),
            "truth": truth,
            "mean": float(vals.mean()),
            "bias": bias,
            "var": var,
            "mse": mse,
            "ci_low": float(np.percentile(boot, 2.5)),
            "ci_high": float(np.percentile(boot, 97.5)),
        }
        if name == "theta_hat":
            entry["var_theory"] = float(np.mean([r["var_theory_theta"] for r in reports]))
        elif name == "varphi_hat":
            entry["var_theory"] = float(np.mean([r["var_theory_varphi"] for r in reports]))
        elif name == "theta_pd":
            entry["var_theory"] = float(
                np.mean([r["diagnostics"]["theta_pd_var_theory"] for r in reports if "theta_pd_var_theory" in r["diagnostics"]])
            )
        summary[name] = entry
    return summary


def _run_point(config: ExperimentConfig, *, point: int, grid_value, jobs: int) -> RunRecord:
    t0 = time.perf_counter()
    tasks = [(config.to_dict(), point, rep) for rep in range(config.replicates)]
    if jobs <= 1:
        results = [_replicate_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_replicate_task, tasks))
    results.sort(key=lambda r: r[0])
    reports = [r[1] for r in results if r[1] is not None]
    failures = [{"replicate": r[0], "reason": r[2]} for r in results if r[2] is not None]
    # The stored snapshot identifies the experiment; where the record is
    # written is environment, so the same (config, seed) stays byte-identical
    # across output locations.
    snapshot = config.to_dict()
    del snapshot["output_dir"]
    return RunRecord(
        mode=config.mode,
        seed=config.noise.seed,
        point_index=point,
        grid_value=grid_value,
        config=snapshot,
        summary=_summarize(config, reports, point),
        failures=failures,
        replicates=reports,
        wall_clock_seconds=time.perf_counter() - t0,
    )


def run_calibration(config: ExperimentConfig, jobs: int = 1) -> RunRecord:
    """All replicates at a single depth, with summary statistics."""
    if config.mode != "calibrate":
        raise ValueError("run_calibration needs mode='calibrate'")
    return _run_point(config, point=0, grid_value=config.depth, jobs=jobs)


def run_sweep(config: ExperimentConfig, jobs: int = 1) -> list[RunRecord]:
    """One RunRecord per grid point (depth or shot-count sweep)."""
    if config.mode == "sweep-depth":
        grid = config.depth_grid
        make = lambda g: dataclasses.replace(config, mode="calibrate", depth=int(g), depth_grid=None)
    elif config.mode == "sweep-shots":
        grid = config.shots_grid
        make = lambda g: dataclasses.replace(
            config, mode="calibrate", shots_grid=None, noise=dataclasses.replace(config.noise, shots=int(g))
        )
    else:
        raise ValueError("run_sweep needs mode 'sweep-depth' or 'sweep-shots'")
    records = []
    for pi, g in enumerate(grid):
        rec = _run_point(make(g), point=pi, grid_value=int(g), jobs=jobs)
        rec.mode = config.mode
        records.append(rec)
    return records


def sweep_rows(config: ExperimentConfig, records: list[RunRecord]) -> list[list]:
    """Tidy table: one row per (grid point, estimator)."""
    grid_var = "d" if config.mode == "sweep-depth" else "shots"
    rows = []
    for rec in records:
        for name, s in rec.summary.items():
            rows.append(
                [grid_var, rec.grid_value, name, s["mse"], s["var"], s["bias"] ** 2, s["ci_low"], s["ci_high"]]
            )
    return rows


def run_crlb_scan(config: ExperimentConfig) -> list[dict]:
    """Exact CRLB and slope table over the configured depth grid."""
    if config.mode != "crlb-scan":
        raise ValueError("run_crlb_scan needs mode='crlb-scan'")
    return fisher.transition_scan(
        config.gate_truth.theta,
        config.noise.shots,
        config.depth_grid,
        varphi=config.gate_truth.varphi,
        chi=config.gate_truth.chi,
    )


def run_alpha_scan(config: ExperimentConfig, jobs: int = 1) -> list[RunRecord]:
    """Depth sweep of the fidelity estimate under depolarizing noise."""
    if config.mode != "alpha-scan":
        raise ValueError("run_alpha_scan needs mode='alpha-scan'")
    records = []
    for pi, d in enumerate(config.depth_grid):
        sub = dataclasses.replace(
            config,
            mode="calibrate",
            depth=int(d),
            depth_grid=None,
            peak_fit=PeakFitConfig(enabled=False),
            theta_pd=False,
        )
        rec = _run_point(sub, point=pi, grid_value=int(d), jobs=jobs)
        rec.mode = "alpha-scan"
        records.append(rec)
    return records


def alpha_scan_rows(config: ExperimentConfig, records: list[RunRecord]) -> list[list]:
    """(d, alpha_dem, median_alpha_hat, median_abs_deviation, n) per depth."""
    rows = []
    for rec in records:
        d = int(rec.grid_value)
        alpha_dem = dem_fidelity(config.noise.depol_rate, 2 * d + 5)
        alphas = np.array([r["alpha_hat"] for r in rec.replicates if r["alpha_hat"] is not None])
        rows.append(
            [
                d,
                alpha_dem,
                float(np.median(alphas)),
                float(np.median(np.abs(alphas - alpha_dem))),
                len(alphas),
            ]
        )
    return rows


def run_confusion_check(config: ExperimentConfig) -> dict:
    """Coverage of the readout-correction error bound.

    Per trial: estimate the confusion matrix row-wise from M_cmt shots,
    correct a random measured distribution with both the estimated and the
    exact matrix, and count || p - p_fs ||_2 > epsilon events.  The empirical
    failure rate must stay below the configured alpha.
    """
    if config.mode != "confusion-check":
        raise ValueError("run_confusion_check needs mode='confusion-check'")
    cc = config.confusion_check or ConfusionCheckConfig()
    confusion = config.noise.confusion
    kappa = confusion.kappa
    if not math.isfinite(kappa):
        raise ValueError("confusion matrix fails diagonal dominance")
    m_cmt = cc.shots if cc.shots is not None else confusion_sample_size(kappa, cc.epsilon, cc.alpha, cc.constant)
    r_true = confusion.entries
    failures = 0
    worst = 0.0
    for trial in range(cc.trials):
        rows = np.empty((4, 4))
        for i in range(4):
            rng = stream(config.noise.seed, _CONFUSION_BASE + trial, i)
            rows[i] = rng.multinomial(m_cmt, r_true[i]) / m_cmt
        q = stream(config.noise.seed, _CONFUSION_BASE + trial, 4).dirichlet(np.ones(4))
        p_exact = np.linalg.solve(r_true.T, q)
        p_fs = np.linalg.solve(rows.T, q)
        err = float(np.linalg.norm(p_exact - p_fs))
        worst = max(worst, err)
        if err > cc.epsilon:
            failures += 1
    return {
        "kappa": kappa,
        "epsilon": cc.epsilon,
        "alpha": cc.alpha,
        "constant": cc.constant,
        "m_cmt": m_cmt,
        "trials": cc.trials,
        "failures": failures,
        "failure_rate": failures / cc.trials,
        "max_error": worst,
    }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    """UTF-8 CSV with LF endings; floats via repr for byte-stable output."""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def write_json(path: str, payload) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(payload, indent=2, default=_json_default))
        fh.write("\n")


_CRLB_HEADER = ["d", "crlb_theta", "crlb_varphi", "crlb_chi", "slope_theta", "slope_varphi", "slope_chi"]


def _mse_columns(records: list[dict], grid_var: str) -> tuple[list[str], list[list]]:
    header = [grid_var]
    for name in ("theta_hat", "varphi_hat", "theta_pf", "theta_pd"):
        header += [f"mse_{name}", f"ci_{name}_low", f"ci_{name}_high"]
    rows = []
    for rec in records:
        row = [rec["grid_value"]]
        for name in ("theta_hat", "varphi_hat", "theta_pf", "theta_pd"):
            s = rec["summary"].get(name)
            row += [None, None, None] if s is None else [s["mse"], s["ci_low"], s["ci_high"]]
        rows.append(row)
    return header, rows


def emit_figure_data(source, figure_id: str, out_dir: str) -> str:
    """Write the CSV behind one figure; returns the path.

    Sources: sweep-depth records for mse-vs-depth/variance-vs-depth,
    sweep-shots records for mse-vs-shots, crlb-scan rows for crlb-vs-depth,
    alpha-scan rows for fidelity-vs-depth.  A mode/figure mismatch raises.
    """
    if figure_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")
    path = os.path.join(out_dir, f"figure_{figure_id}.csv")
    if figure_id == "crlb-vs-depth":
        rows = list(source)
        if not rows or "crlb_varphi" not in rows[0]:
            raise ValueError("crlb-vs-depth needs crlb-scan rows")
        write_csv(
            path,
            ["d", "crlb_varphi", "preasymptotic_varphi"],
            [[r["d"], r["crlb_varphi"], r["preasymptotic_varphi"]] for r in rows],
        )
        return path
    if figure_id == "fidelity-vs-depth":
        rows = list(source)
        if not rows or len(rows[0]) != 5:
            raise ValueError("fidelity-vs-depth needs alpha-scan rows")
        write_csv(path, ["d", "alpha_dem", "median_alpha_hat", "median_abs_deviation", "n"], rows)
        return path
    records = [r.to_json_dict() if isinstance(r, RunRecord) else r for r in source]
    want_mode = "sweep-shots" if figure_id == "mse-vs-shots" else "sweep-depth"
    if not records or any(r["mode"] != want_mode for r in records):
        raise ValueError(f"{figure_id} needs {want_mode} records")
    if figure_id in ("mse-vs-depth", "mse-vs-shots"):
        header, rows = _mse_columns(records, "d" if figure_id == "mse-vs-depth" else "shots")
        write_csv(path, header, rows)
        return path
    # variance-vs-depth
    header = ["d", "var_theta", "var_theory_theta", "mse_theta", "var_varphi", "var_theory_varphi", "mse_varphi"]
    rows = []
    for rec in records:
        st, sv = rec["summary"]["theta_hat"], rec["summary"]["varphi_hat"]
        rows.append([rec["grid_value"], st["var"], st["var_theory"], st["mse"], sv["var"], sv["var_theory"], sv["mse"]])
    write_csv(path, header, rows)
    return path


def run_mode(config: ExperimentConfig, jobs: int = 1) -> dict:
    """Dispatch on config.mode, write canonical outputs, return file paths."""
    out = config.output_dir
    paths = {}
    if config.mode == "calibrate":
        rec = run_calibration(config, jobs=jobs)
        paths["record"] = os.path.join(out, "run_record.json")
        write_json(paths["record"], rec.to_json_dict())
    elif config.mode in ("sweep-depth", "sweep-shots"):
        records = run_sweep(config, jobs=jobs)
        paths["records"] = os.path.join(out, "sweep_records.json")
        write_json(paths["records"], [r.to_json_dict() for r in records])
        paths["table"] = os.path.join(out, "sweep.csv")
        write_csv(
            paths["table"],
            ["grid_var", "grid_value", "estimator", "mse", "var", "bias2", "ci_low", "ci_high"],
            sweep_rows(config, records),
        )
    elif config.mode == "crlb-scan":
        rows = run_crlb_scan(config)
        paths["rows"] = os.path.join(out, "crlb_scan.json")
        write_json(paths["rows"], rows)
        paths["table"] = os.path.join(out, "crlb_scan.csv")
        write_csv(paths["table"], _CRLB_HEADER, [[r[c] for c in _CRLB_HEADER] for r in rows])
        paths["figure"] = emit_figure_data(rows, "crlb-vs-depth", out)
    elif config.mode == "alpha-scan":
        records = run_alpha_scan(config, jobs=jobs)
        paths["records"] = os.path.join(out, "alpha_records.json")
        write_json(paths["records"], [r.to_json_dict() for r in records])
        rows = alpha_scan_rows(config, records)
        paths["rows"] = os.path.join(out, "alpha_scan.json")
        write_json(paths["rows"], rows)
        paths["table"] = os.path.join(out, "alpha_scan.csv")
        write_csv(paths["table"], ["d", "alpha_dem", "median_alpha_hat", "median_abs_deviation", "n"], rows)
        paths["figure"] = emit_figure_data(rows, "fidelity-vs-depth", out)
    elif config.mode == "confusion-check":
        result = run_confusion_check(config)
        paths["report"] = os.path.join(out, "confusion_check.json")
        write_json(paths["report"], result)
    return paths
