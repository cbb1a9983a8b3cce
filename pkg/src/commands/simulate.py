"""The ``simulate`` command."""

import os
import sys
from dataclasses import dataclass
from typing import Optional

from colorama import Fore, Style

from src.analysis.report import analyze
from src.commands.bundle import (
    ReportBundle,
    log_path,
    provenance,
    validate_bundle,
    wants_csv,
    wants_json,
)
from src.config.run_config import RunConfig
from src.model.network import CouplingTopology
from src.model.params import GoodwinParams
from src.simulation.integrator import SimConfig, Trajectory, default_initial_state, integrate
from src.simulation.metrics import (
    OscillationClass,
    PeriodEstimate,
    SyncMetric,
    classify_oscillation,
    estimate_period,
    measure_sync,
)
from src.tools.files_tools import trajectory_frame, write_csv, write_json
from src.utils.errors import DivergenceError, NotOscillatoryError
from src.utils.logger import ActionType, log_experiment


@dataclass
class SimulationOutcome:
    trajectory: Trajectory
    period: Optional[PeriodEstimate]
    sync: SyncMetric
    oscillation: OscillationClass

    @property
    def synchronized_oscillation(self) -> bool:
        """The combined verdict: oscillating and synchronized."""
        return self.oscillation is OscillationClass.OSCILLATORY and self.sync.synchronized


def run_simulation(g: GoodwinParams, topology: CouplingTopology, sim: SimConfig) -> SimulationOutcome:
    """Integrate from the seeded initial state and measure the trajectory."""
    traj = integrate(g, topology, default_initial_state(g, topology, sim), sim)
    oscillation = classify_oscillation(traj, sim)
    period = None
    if oscillation is OscillationClass.OSCILLATORY:
        try:
            period = estimate_period(traj, sim)
        except NotOscillatoryError:
            period = None
    return SimulationOutcome(trajectory=traj, period=period, sync=measure_sync(traj, sim), oscillation=oscillation)


def _write(cfg: RunConfig, fmt: str, traj: Trajectory, payload: dict) -> list:
    written = []
    if wants_csv(fmt):
        written.append(write_csv(os.path.join(cfg.output, "trajectory.csv"), trajectory_frame(traj), cfg.output))
    if wants_json(fmt):
        written.append(write_json(os.path.join(cfg.output, "simulation.json"), payload, cfg.output))
    return written


def cmd_simulate(cfg: RunConfig, fmt: str = "both") -> ReportBundle:
    """
    Integrate the configured network and write the trajectory CSV and the
    result bundle.

    Raises:
        DivergenceError: After flushing the partial trajectory and a bundle
            carrying ``diverged_at``.
    """
    topology = cfg.topology()
    print(f"🧮 Simulating n={topology.n} oscillators to t={cfg.sim.t_end} (dt={cfg.sim.dt}, seed={cfg.sim.seed})...")
    report = analyze(cfg.params, topology, cfg.equilibrium)
    prov = provenance(cfg.config_hash, cfg.sim.seed, equilibrium=cfg.equilibrium.value)

    try:
        outcome = run_simulation(cfg.params, topology, cfg.sim)
    except DivergenceError as exc:
        print(f"  ❌ Diverged at t={exc.time:.6g}", file=sys.stderr)
        bundle = ReportBundle(command="simulate", provenance=prov, analysis=report, sim=cfg.sim.as_dict(),
                              diverged_at=exc.time, notes=[str(exc)])
        written = _write(cfg, fmt, exc.trajectory, validate_bundle(bundle.as_dict()))
        log_experiment(
            command="simulate",
            action=ActionType.SIMULATION,
            details={"parameters": cfg.as_dict(), "result": {"diverged_at": exc.time, "files": written}},
            status="FAILURE",
            log_file=log_path(cfg.output),
        )
        raise

    bundle = ReportBundle(
        command="simulate",
        provenance=prov,
        analysis=report,
        period=outcome.period,
        sync=outcome.sync,
        oscillation=outcome.oscillation.value,
        sim=cfg.sim.as_dict(),
        extra={"min_state": outcome.trajectory.min_value},
        notes=list(report.notes),
    )
    written = _write(cfg, fmt, outcome.trajectory, validate_bundle(bundle.as_dict()))

    colour = Fore.GREEN if outcome.oscillation is OscillationClass.OSCILLATORY else Fore.YELLOW
    print(f"  📊 {colour}{outcome.oscillation.value}{Style.RESET_ALL}, "
          f"synchronized: {outcome.sync.synchronized} (error {outcome.sync.sync_error:.3e})")
    if outcome.period is not None:
        print(f"  ⏱️  period {outcome.period.period_mean:.4f} ± {outcome.period.period_std:.2e} "
              f"over {outcome.period.n_cycles} cycles (predicted {report.T_collective:.4f})")

    log_experiment(
        command="simulate",
        action=ActionType.SIMULATION,
        details={"parameters": cfg.as_dict(), "result": {
            "oscillation": outcome.oscillation.value,
            "period": outcome.period.period_mean if outcome.period else None,
            "sync_error": outcome.sync.sync_error,
            "files": written,
        }},
        status="SUCCESS",
        log_file=log_path(cfg.output),
    )
    for path in written:
        print(f"  💾 {path}")
    return bundle
