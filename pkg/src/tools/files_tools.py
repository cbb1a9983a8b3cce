import json
import os

import pandas as pd


def _validate_path(file_path: str, root: str) -> str:
    """
    Internal utility: Normalize path and ensure it's within the output directory.

    Args:
        file_path: The path to validate.
        root: The output directory every result must stay inside.

    Returns:
        The absolute path if valid.

    Raises:
        ValueError: If the path is outside the output directory.
    """
    root = os.path.abspath(root)
    abs_path = os.path.abspath(file_path)

    # commonpath raises ValueError on Windows if drives are different
    try:
        common = os.path.commonpath([root, abs_path])
    except ValueError:
        raise ValueError(f"Security Error: Path '{file_path}' is on a different drive than the output directory.")

    if common != root:
        raise ValueError(f"Security Error: Access to '{file_path}' is denied (outside output directory).")

    return abs_path


def write_json(file_path: str, payload: dict, root: str) -> str:
    """
    Write payload as UTF-8 JSON with LF line endings, creating parent directories.

    Non-finite floats are rejected (strict JSON).

    Returns:
        The absolute path written.
    """
    safe_path = _validate_path(file_path, root)
    os.makedirs(os.path.dirname(safe_path), exist_ok=True)
    text = json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False)
    with open(safe_path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text + "\n")
    return safe_path


def write_csv(file_path: str, frame: pd.DataFrame, root: str) -> str:
    """
    Write a DataFrame as comma-separated values with a header row.

    Floats keep their shortest round-trip representation; lines end in LF.

    Returns:
        The absolute path written.
    """
    safe_path = _validate_path(file_path, root)
    os.makedirs(os.path.dirname(safe_path), exist_ok=True)
    frame.to_csv(safe_path, index=False, lineterminator="\n", encoding="utf-8")
    return safe_path


def trajectory_columns(n: int) -> list[str]:
    """Header t, x1_1..x1_n, x2_1..x2_n, x3_1..x3_n."""
    return ["t"] + [f"x{k}_{i}" for k in (1, 2, 3) for i in range(1, n + 1)]


def trajectory_frame(traj) -> pd.DataFrame:
    """One row per sample: time, then every x1, every x2, every x3."""
    m, _, n = traj.states.shape
    values = traj.states.reshape(m, 3 * n)
    frame = pd.DataFrame(values, columns=trajectory_columns(n)[1:])
    frame.insert(0, "t", traj.times)
    return frame
