"""Command implementations behind main.py."""

from .bundle import FORMATS, ReportBundle, provenance, validate_bundle
from .analyze import cmd_analyze
from .simulate import SimulationOutcome, cmd_simulate, run_simulation
from .reproduce import TABLE2_REFERENCE, TABLE3_REFERENCE, cmd_reproduce, table2_rows, table3_rows
from .sweep import SWEEP_COLUMNS, cmd_sweep, run_sweep, run_sweep_point

__all__ = [
    'FORMATS',
    'ReportBundle',
    'provenance',
    'validate_bundle',
    'cmd_analyze',
    'SimulationOutcome',
    'cmd_simulate',
    'run_simulation',
    'TABLE2_REFERENCE',
    'TABLE3_REFERENCE',
    'cmd_reproduce',
    'table2_rows',
    'table3_rows',
    'SWEEP_COLUMNS',
    'cmd_sweep',
    'run_sweep',
    'run_sweep_point',
]
