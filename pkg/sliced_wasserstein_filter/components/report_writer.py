"""
Output files of the CLI.

Every file is written to a temporary sibling and renamed into place only after
all files of a command have been staged. A failed command leaves no output
file behind.
"""
import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd


def _stage(path: Path, text: str) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except BaseException:
        os.remove(tmp_name)
        raise
    return tmp_name


def write_files_atomic(files: dict[Path, str]) -> list[Path]:
    """
    Write several text files as one unit.

    Args:
        files: target path -> full file content

    Returns:
        The target paths, in the given order
    """
    staged: list[tuple[str, Path]] = []
    try:
        for path, text in files.items():
            path = Path(path)
            staged.append((_stage(path, text), path))
    except BaseException:
        for tmp_name, _ in staged:
            if os.path.exists(tmp_name):
                os.remove(tmp_name)
        raise
    for tmp_name, path in staged:
        os.replace(tmp_name, path)
    return [path for _, path in staged]


def write_text_atomic(path, text: str) -> Path:
    return write_files_atomic({Path(path): text})[0]


def _json_default(value: Any):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_json_default) + "\n"


def to_csv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def write_json_atomic(path, payload: Any) -> Path:
    return write_text_atomic(path, to_json(payload))
