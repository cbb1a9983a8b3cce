"""File output helpers for run results."""

from .files_tools import trajectory_columns, trajectory_frame, write_csv, write_json

__all__ = [
    'trajectory_columns',
    'trajectory_frame',
    'write_csv',
    'write_json',
]
