import json
import math
import os
import uuid
from datetime import datetime
from enum import Enum

# Default location of the experiment log
LOG_FILE = os.path.join("logs", "experiment_data.json")


class ActionType(str, Enum):
    """
    Kinds of runs recorded in the experiment log.
    """
    ANALYSIS = "ANALYSIS"          # closed-form predictions
    SIMULATION = "SIMULATION"      # a single ODE integration
    REPRODUCTION = "REPRODUCTION"  # reference table regeneration
    SWEEP = "SWEEP"                # parameter grid


def _json_safe(value):
    """Replace non-finite floats with None so the log stays strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def log_experiment(command: str, action: ActionType, details: dict, status: str, log_file: str = None) -> dict:
    """
    Append one run to the experiment log.

    Args:
        command (str): CLI command that produced the run (e.g. "analyze").
        action (ActionType): Kind of run (ActionType member or its value).
        details (dict): Run details. MUST contain 'parameters' and 'result'.
        status (str): "SUCCESS" or "FAILURE".
        log_file (str): Target JSON file (default: logs/experiment_data.json).

    Returns:
        The entry that was written.

    Raises:
        ValueError: If the action is unknown or required keys are missing.
    """

    # --- 1. ACTION VALIDATION ---
    valid_actions = [a.value for a in ActionType]
    if isinstance(action, ActionType):
        action_str = action.value
    elif action in valid_actions:
        action_str = action
    else:
        raise ValueError(f"❌ Invalid action: '{action}'. Use ActionType (e.g. ActionType.SIMULATION).")

    # --- 2. REQUIRED DETAILS ---
    # Every run must be reproducible from its log entry
    required_keys = ["parameters", "result"]
    missing_keys = [key for key in required_keys if key not in details]
    if missing_keys:
        raise ValueError(
            f"❌ Logging error (command: {command}): "
            f"fields {missing_keys} are missing from 'details'."
        )

    # --- 3. ENTRY ---
    log_file = log_file or LOG_FILE
    log_dir = os.path.dirname(log_file)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)

    entry = {
        "id": str(uuid.uuid4()),
        "timestamp": datetime.now().isoformat(),
        "command": command,
        "action": action_str,
        "details": _json_safe(details),
        "status": status
    }

    # --- 4. READ & APPEND ---
    data = []
    if os.path.exists(log_file):
        try:
            with open(log_file, 'r', encoding='utf-8') as f:
                content = f.read().strip()
                if content:
                    data = json.loads(content)
        except json.JSONDecodeError:
            print(f"⚠️ Warning: log file {log_file} was corrupt. Starting a new list.")
            data = []

    data.append(entry)

    with open(log_file, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=4, ensure_ascii=False)

    return entry
