"""Environment-driven settings."""

import os

from src.utils.errors import ConfigError

TOOL_VERSION = "1.0.0"
SCHEMA_VERSION = 1
THREADS_ENV = "GOODWIN_NET_THREADS"


def sweep_workers() -> int:
    """Worker count for sweeps: GOODWIN_NET_THREADS, else the CPU count."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    if workers < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return workers
