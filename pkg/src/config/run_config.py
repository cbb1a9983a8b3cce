"""JSON run configuration: parsing, validation, overrides and hashing."""

import hashlib
import itertools
import json
import os
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

from src.analysis.equilibrium import EquilibriumConvention
from src.model.network import (
    CouplingTopology,
    complete_topology,
    laplacian_from_weights,
    ring_topology,
    table1_topology,
)
from src.model.params import DimensionalParams, GoodwinParams, nondimensionalize
from src.simulation.integrator import SimConfig
from src.utils.errors import ConfigError, GoodwinNetError

MAX_SWEEP_POINTS = 10_000
COUPLING_KINDS = ("matrix", "table1", "complete", "ring")
DIMENSIONAL_KEYS = ("v0", "v1", "v2", "k1", "k2", "k3", "Km")
SIM_KEYS = ("dt", "t_end", "transient_fraction", "seed", "perturbation",
            "record_every", "sync_rtol", "amplitude_rtol")


@dataclass(frozen=True)
class SweepSpec:
    """Grid axes; an omitted axis holds the base configuration value."""
    b: Tuple[Tuple[float, float, float], ...]
    p: Tuple[float, ...]
    coupling_scale: Tuple[float, ...]

    @property
    def size(self) -> int:
        return len(self.b) * len(self.p) * len(self.coupling_scale)

    def points(self) -> List[dict]:
        """Grid points in deterministic order (b outermost, coupling scale innermost)."""
        return [{"index": k, "b": b, "p": p, "coupling_scale": s}
                for k, (b, p, s) in enumerate(itertools.product(self.b, self.p, self.coupling_scale))]


@dataclass(frozen=True)
class RunConfig:
    """A validated run configuration."""
    params: GoodwinParams
    coupling: Dict[str, Any]
    sim: SimConfig = field(default_factory=SimConfig)
    output: str = "results"
    equilibrium: EquilibriumConvention = EquilibriumConvention.STANDARD
    dimensional: Optional[DimensionalParams] = None
    sweep: Optional[SweepSpec] = None
    config_hash: str = ""

    def topology(self) -> CouplingTopology:
        return build_topology(self.coupling)

    def as_dict(self) -> dict:
        return {
            "p": self.params.p,
            "b": list(self.params.b),
            "dimensional": None if self.dimensional is None else {
                k: getattr(self.dimensional, k) for k in DIMENSIONAL_KEYS},
            "coupling": self.coupling,
            "sim": self.sim.as_dict(),
            "output": self.output,
            "equilibrium": self.equilibrium.value,
        }


def config_hash(data: dict) -> str:
    """SHA-256 of the canonical JSON form of a raw configuration."""
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{name}' must be a number, got {value!r}")
    return float(value)


def _rates(value, name: str = "b") -> Tuple[float, float, float]:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return (float(value),) * 3
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ConfigError(f"'{name}' must be a number or a list [b1, b2, b3], got {value!r}")
    return tuple(_number(v, name) for v in value)


def build_topology(spec: Dict[str, Any]) -> CouplingTopology:
    """
    Build the coupling topology described by a ``coupling`` block.

    Raises:
        ConfigError: On an unknown kind or missing fields.
        InvalidTopologyError: On invalid weights.
    """
    kind = spec.get("kind")
    if kind == "matrix":
        if "weights" not in spec:
            raise ConfigError("coupling kind 'matrix' requires 'weights'")
        topology = laplacian_from_weights(spec["weights"])
    elif kind == "table1":
        topology = table1_topology()
    elif kind in ("complete", "ring"):
        if "n" not in spec:
            raise ConfigError(f"coupling kind '{kind}' requires 'n'")
        n = spec["n"]
        if isinstance(n, bool) or not isinstance(n, int):
            raise ConfigError(f"coupling 'n' must be an integer, got {n!r}")
        weight = _number(spec.get("weight", 1.0), "weight")
        builder = complete_topology if kind == "complete" else ring_topology
        topology = builder(n, weight)
    else:
        raise ConfigError(f"Unknown coupling kind {kind!r}; expected one of {', '.join(COUPLING_KINDS)}")

    scale = spec.get("scale")
    if scale is not None:
        topology = topology.scaled(_number(scale, "scale"))
    return topology


def _parse_params(data: dict) -> Tuple[GoodwinParams, Optional[DimensionalParams]]:
    has_b = "b" in data
    has_dim = "dimensional" in data
    if not has_b and not has_dim:
        raise ConfigError("Configuration has no parameter block: give 'b' or 'dimensional'")
    if has_b and has_dim:
        raise ConfigError("Give exactly one of 'b' and 'dimensional', not both")
    if "p" not in data:
        raise ConfigError("Configuration is missing the Hill coefficient 'p'")
    p = _number(data["p"], "p")

    if has_b:
        return GoodwinParams(*_rates(data["b"]), p), None

    block = data["dimensional"]
    if not isinstance(block, dict):
        raise ConfigError("'dimensional' must be an object")
    missing = [k for k in DIMENSIONAL_KEYS if k not in block]
    if missing:
        raise ConfigError(f"'dimensional' block is missing {missing}")
    d = DimensionalParams(**{k: _number(block[k], k) for k in DIMENSIONAL_KEYS}, p=p)
    return nondimensionalize(d), d


def _parse_sim(block) -> SimConfig:
    if block is None:
        return SimConfig()
    if not isinstance(block, dict):
        raise ConfigError("'sim' must be an object")
    unknown = sorted(set(block) - set(SIM_KEYS))
    if unknown:
        raise ConfigError(f"Unknown 'sim' fields: {unknown}")
    values = {}
    for key, value in block.items():
        if key in ("seed", "record_every"):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"'sim.{key}' must be an integer, got {value!r}")
            values[key] = value
        else:
            values[key] = _number(value, f"sim.{key}")
    return SimConfig(**values)


def _parse_sweep(block, params: GoodwinParams, coupling: dict) -> Optional[SweepSpec]:
    if block is None:
        return None
    if not isinstance(block, dict):
        raise ConfigError("'sweep' must be an object")
    b_axis = block.get("b", [params.b])
    p_axis = block.get("p", [params.p])
    scale_axis = block.get("coupling_scale", [coupling.get("scale", 1.0)])
    for name, axis in (("b", b_axis), ("p", p_axis), ("coupling_scale", scale_axis)):
        if not isinstance(axis, list):
            raise ConfigError(f"'sweep.{name}' must be a list")
    spec = SweepSpec(
        b=tuple(_rates(v, "sweep.b") for v in b_axis),
        p=tuple(_number(v, "sweep.p") for v in p_axis),
        coupling_scale=tuple(_number(v, "sweep.coupling_scale") for v in scale_axis),
    )
    if spec.size > MAX_SWEEP_POINTS:
        raise ConfigError(f"Sweep grid has {spec.size} points, limit is {MAX_SWEEP_POINTS}")
    return spec


def parse_run_config(data: dict) -> RunConfig:
    """
    Validate a decoded configuration object.

    Raises:
        ConfigError: On any structural problem. Parameter and topology
            errors keep their own types (all map to exit code 2).
    """
    if not isinstance(data, dict):
        raise ConfigError("Configuration must be a JSON object")
    params, dimensional = _parse_params(data)

    coupling = data.get("coupling", {"kind": "table1"})
    if not isinstance(coupling, dict):
        raise ConfigError("'coupling' must be an object")
    build_topology(coupling)

    try:
        equilibrium = EquilibriumConvention(data.get("equilibrium", "standard"))
    except ValueError:
        raise ConfigError(f"'equilibrium' must be 'standard' or 'shifted', got {data.get('equilibrium')!r}")

    output = data.get("output", "results")
    if not isinstance(output, str) or not output:
        raise ConfigError("'output' must be a non-empty path")

    return RunConfig(
        params=params,
        coupling=coupling,
        sim=_parse_sim(data.get("sim")),
        output=output,
        equilibrium=equilibrium,
        dimensional=dimensional,
        sweep=_parse_sweep(data.get("sweep"), params, coupling),
        config_hash=config_hash(data),
    )


def load_run_config(path: str) -> RunConfig:
    """Read and validate a JSON configuration file."""
    if not os.path.isfile(path):
        raise ConfigError(f"Configuration file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Configuration file {path} is not valid JSON: {e}")
    return parse_run_config(data)


def apply_overrides(cfg: RunConfig, seed: Optional[int] = None, dt: Optional[float] = None,
                    t_end: Optional[float] = None, out: Optional[str] = None) -> RunConfig:
    """Return ``cfg`` with command-line values replacing file values."""
    sim_changes = {k: v for k, v in (("seed", seed), ("dt", dt), ("t_end", t_end)) if v is not None}
    try:
        sim = replace(cfg.sim, **sim_changes) if sim_changes else cfg.sim
    except GoodwinNetError as e:
        raise ConfigError(str(e))
    return replace(cfg, sim=sim, output=out if out is not None else cfg.output)
