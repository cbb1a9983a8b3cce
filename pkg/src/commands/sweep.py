"""The ``sweep`` command: a parameter grid run across a process pool."""

import os
from concurrent.futures import ProcessPoolExecutor

import pandas as pd

from src.analysis.equilibrium import (
    EquilibriumConvention,
    check_sync_condition,
    gamma_max_slope,
    oscillation_index,
    solve_equilibrium,
)
from src.analysis.harmonic_balance import predict_period
from src.analysis.spectral import spectral_decompose
from src.commands.bundle import ReportBundle, log_path, provenance, validate_bundle, wants_csv, wants_json
from src.commands.simulate import run_simulation
from src.config.run_config import RunConfig, build_topology
from src.config.settings import sweep_workers
from src.model.params import GoodwinParams
from src.simulation.integrator import SimConfig
from src.tools.files_tools import write_csv, write_json
from src.utils.errors import ConfigError, GoodwinNetError
from src.utils.logger import ActionType, log_experiment

SWEEP_COLUMNS = ["index", "b1", "b2", "b3", "p", "coupling_scale", "R", "oscillation_predicted",
                 "rho", "sync_condition_met", "T_predicted", "T_measured", "period_std",
                 "oscillation", "synchronized", "sync_error", "error"]


def run_sweep_point(point: dict, coupling: dict, sim: SimConfig, convention: str) -> dict:
    """
    Analyze and simulate one grid point.

    Failures are recorded in the row's ``error`` column instead of raised.
    """
    b1, b2, b3 = point["b"]
    row = dict.fromkeys(SWEEP_COLUMNS)
    row.update({"index": point["index"], "b1": b1, "b2": b2, "b3": b3, "p": point["p"],
                "coupling_scale": point["coupling_scale"], "error": ""})
    try:
        g = GoodwinParams(b1, b2, b3, point["p"])
        base = build_topology({k: v for k, v in coupling.items() if k != "scale"})
        topology = base.scaled(point["coupling_scale"])
        R = oscillation_index(g, solve_equilibrium(g, EquilibriumConvention(convention)))
        rho = spectral_decompose(topology).algebraic_connectivity
        row.update({"R": R, "oscillation_predicted": R > 1, "rho": rho,
                    "T_predicted": predict_period(g).T_collective})
        if topology.connected and rho > 0:
            row["sync_condition_met"] = check_sync_condition(g, gamma_max_slope(g.p), rho).satisfied

        outcome = run_simulation(g, topology, sim)
        row.update({
            "T_measured": outcome.period.period_mean if outcome.period else None,
            "period_std": outcome.period.period_std if outcome.period else None,
            "oscillation": outcome.oscillation.value,
            "synchronized": outcome.sync.synchronized,
            "sync_error": outcome.sync.sync_error,
        })
    except (GoodwinNetError, ValueError, ArithmeticError) as e:
        row["error"] = f"{type(e).__name__}: {e}"
    return row


def _run_point(args) -> dict:
    return run_sweep_point(*args)


def run_sweep(cfg: RunConfig, workers: int = 1) -> list:
    """Rows for every grid point, in grid order."""
    if cfg.sweep is None:
        raise ConfigError("Configuration has no 'sweep' block")
    jobs = [(point, cfg.coupling, cfg.sim, cfg.equilibrium.value) for point in cfg.sweep.points()]
    if not jobs:
        return []
    if workers <= 1 or len(jobs) == 1:
        return [_run_point(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        # map keeps submission order
        return list(pool.map(_run_point, jobs))


def cmd_sweep(cfg: RunConfig, fmt: str = "both", workers: int = None) -> pd.DataFrame:
    """
    Run the configured grid and write ``sweep.csv`` and/or ``sweep.json``.

    An empty grid writes a header-only CSV.
    """
    workers = workers or sweep_workers()
    size = cfg.sweep.size if cfg.sweep else 0
    print(f"🧪 Sweeping {size} grid point(s) on {workers} worker(s)...")
    rows = run_sweep(cfg, workers)
    frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)

    failures = sum(1 for row in rows if row["error"])
    if failures:
        print(f"  ⚠️  {failures}/{len(rows)} point(s) failed; see the 'error' column")

    bundle = ReportBundle(command="sweep", provenance=provenance(cfg.config_hash, cfg.sim.seed,
                                                                 equilibrium=cfg.equilibrium.value),
                          sim=cfg.sim.as_dict(), extra={"rows": rows})
    payload = validate_bundle(bundle.as_dict())

    written = []
    if wants_csv(fmt):
        written.append(write_csv(os.path.join(cfg.output, "sweep.csv"), frame, cfg.output))
    if wants_json(fmt):
        written.append(write_json(os.path.join(cfg.output, "sweep.json"), payload, cfg.output))

    log_experiment(
        command="sweep",
        action=ActionType.SWEEP,
        details={"parameters": cfg.as_dict(), "result": {"points": len(rows), "failures": failures,
                                                          "files": written}},
        status="SUCCESS",
        log_file=log_path(cfg.output),
    )
    for path in written:
        print(f"  💾 {path}")
    return frame
