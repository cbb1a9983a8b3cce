"""The ``analyze`` command."""

import os

import pandas as pd
from colorama import Fore, Style

from src.analysis.equilibrium import EquilibriumConvention, oscillation_index, solve_equilibrium
from src.analysis.report import AnalysisReport, analyze
from src.commands.bundle import (
    ReportBundle,
    log_path,
    provenance,
    validate_bundle,
    wants_csv,
    wants_json,
)
from src.config.run_config import RunConfig
from src.model.params import GoodwinParams
from src.tools.files_tools import write_csv, write_json
from src.utils.logger import ActionType, log_experiment


def verdict(flag) -> str:
    """Coloured yes/no/n.a. for console output."""
    if flag is None:
        return f"{Fore.YELLOW}n/a{Style.RESET_ALL}"
    return f"{Fore.GREEN}yes{Style.RESET_ALL}" if flag else f"{Fore.RED}no{Style.RESET_ALL}"


def r_by_convention(g: GoodwinParams) -> dict:
    return {c.value: oscillation_index(g, solve_equilibrium(g, c)) for c in EquilibriumConvention}


def print_report(report: AnalysisReport):
    e = report.equilibrium
    print(f"  ⚖️  x0 = {e.x0:.6f} ({e.convention.value}), sigma = {report.sigma:.6f}")
    print(f"  📈 R = {report.R:.4f}  oscillation predicted: {verdict(report.oscillation_predicted)}")
    print(f"  🔗 gamma = {report.gamma:.6f}, rho = {report.rho:.6f}, threshold = {report.sync_threshold:.6f}"
          f"  sync condition met: {verdict(report.sync_condition_met)}")
    line = f"  ⏱️  w = {report.w:.6f}, T_collective = {report.T_collective:.4f}"
    if report.T_dimensional is not None:
        line += f", T_dimensional = {report.T_dimensional:.4f}"
    print(line)
    if report.harmonic_balance is not None:
        hb = report.harmonic_balance
        print(f"  〰️  amplitudes (extrapolated): alpha = {hb.alpha:.4f}, beta = {hb.beta:.4f}")
    for note in report.notes:
        print(f"  ⚠️  {note}")


def cmd_analyze(cfg: RunConfig, fmt: str = "both") -> AnalysisReport:
    """
    Closed-form analysis of one configuration.

    Prints the report and writes ``analysis.json`` and/or ``analysis.csv``
    under ``cfg.output``.
    """
    print("🔍 Analyzing configuration...")
    topology = cfg.topology()
    report = analyze(cfg.params, topology, cfg.equilibrium)
    print_report(report)

    bundle = ReportBundle(
        command="analyze",
        provenance=provenance(cfg.config_hash, cfg.sim.seed, equilibrium=cfg.equilibrium.value),
        analysis=report,
        extra={"R_by_convention": r_by_convention(cfg.params)},
        notes=list(report.notes),
    )
    payload = validate_bundle(bundle.as_dict())

    written = []
    if wants_json(fmt):
        written.append(write_json(os.path.join(cfg.output, "analysis.json"), payload, cfg.output))
    if wants_csv(fmt):
        row = {k: v for k, v in report.as_dict().items() if not isinstance(v, (dict, list)) or k == "params"}
        row.update(row.pop("params"))
        written.append(write_csv(os.path.join(cfg.output, "analysis.csv"), pd.DataFrame([row]), cfg.output))

    log_experiment(
        command="analyze",
        action=ActionType.ANALYSIS,
        details={"parameters": cfg.as_dict(), "result": {"R": report.R, "T_collective": report.T_collective,
                                                          "files": written}},
        status="SUCCESS",
        log_file=log_path(cfg.output),
    )
    for path in written:
        print(f"  💾 {path}")
    return report
