"""Result bundles: assembly, provenance and schema validation."""

import math
import os
from dataclasses import dataclass, field
from typing import List, Optional

from src.analysis.report import AnalysisReport
from src.config.settings import SCHEMA_VERSION, TOOL_VERSION
from src.simulation.metrics import PeriodEstimate, SyncMetric
from src.utils.errors import InvalidBundleError

PROVENANCE_KEYS = ("config_hash", "tool_version", "seed")
FORMATS = ("json", "csv", "both")


def wants_json(fmt: str) -> bool:
    return fmt in ("json", "both")


def wants_csv(fmt: str) -> bool:
    return fmt in ("csv", "both")


def log_path(out_dir: str) -> str:
    return os.path.join(out_dir, "logs", "experiment_data.json")


def provenance(config_hash: str, seed: int, **extra) -> dict:
    return {"config_hash": config_hash, "tool_version": TOOL_VERSION, "seed": seed, **extra}


@dataclass
class ReportBundle:
    """Everything one run produced, ready for serialization."""
    command: str
    provenance: dict
    analysis: Optional[AnalysisReport] = None
    period: Optional[PeriodEstimate] = None
    sync: Optional[SyncMetric] = None
    oscillation: Optional[str] = None
    sim: Optional[dict] = None
    diverged_at: Optional[float] = None
    extra: dict = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        payload = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "provenance": dict(self.provenance),
            "sim": self.sim,
            "analysis": self.analysis.as_dict() if self.analysis else None,
            "period": self.period.as_dict() if self.period else None,
            "sync": self.sync.as_dict() if self.sync else None,
            "oscillation": self.oscillation,
            "diverged_at": self.diverged_at,
            "notes": list(self.notes),
        }
        payload.update(self.extra)
        return payload


def _check_finite(value, path: str):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            raise InvalidBundleError(f"Non-finite number at {path}")
        return
    if isinstance(value, dict):
        for key, item in value.items():
            _check_finite(item, f"{path}.{key}")
        return
    if isinstance(value, (list, tuple)):
        for k, item in enumerate(value):
            _check_finite(item, f"{path}[{k}]")
        return
    raise InvalidBundleError(f"Unserializable value of type {type(value).__name__} at {path}")


def validate_bundle(payload: dict) -> dict:
    """
    Check schema version, provenance and finiteness of every number.

    Returns:
        The payload unchanged.

    Raises:
        InvalidBundleError: On the first violation found.
    """
    if not isinstance(payload, dict):
        raise InvalidBundleError("Bundle must be a JSON object")
    if payload.get("schema") != SCHEMA_VERSION:
        raise InvalidBundleError(f"Unsupported schema {payload.get('schema')!r}, expected {SCHEMA_VERSION}")
    if "command" not in payload:
        raise InvalidBundleError("Bundle has no 'command'")
    prov = payload.get("provenance")
    if not isinstance(prov, dict):
        raise InvalidBundleError("Bundle has no provenance")
    missing = [k for k in PROVENANCE_KEYS if k not in prov]
    if missing:
        raise InvalidBundleError(f"Provenance is missing {missing}")
    _check_finite(payload, "$")
    return payload
