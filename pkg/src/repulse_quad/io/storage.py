"""CSV and JSON artefacts.

Node sets are CSV: header row x1..xd, comma separated, '.' decimal, LF line
endings, 17 significant digits so values survive a round trip. Structured
records are UTF-8 JSON with sorted keys; non-finite floats are written as null.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from ..common.exceptions import StorageError
from ..embedding.estimator import EmbeddingEstimate
from ..energy.configuration import PointsLike, as_points
from ..experiments.report import ExperimentReport
from ..samplers.mala import ChainDiagnostics

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _header(d: int) -> str:
    return ",".join(f"x{i}" for i in range(1, d + 1))


def write_points(points: PointsLike, path: PathLike) -> Path:
    """Write an (n, d) node set as CSV"""
    array = as_points(points)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            np.savetxt(
                f, array, fmt="%.17g", delimiter=",", header=_header(array.shape[1]), comments=""
            )
    except OSError as e:
        raise StorageError(f"Cannot write {path}: {e}") from e
    logger.debug(f"Wrote {array.shape[0]} points to {path}")
    return path


def read_points(path: PathLike) -> np.ndarray:
    """Read a node set written by write_points"""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            header = f.readline().strip()
            points = np.loadtxt(f, delimiter=",", ndmin=2)
    except (OSError, ValueError) as e:
        raise StorageError(f"Cannot read points from {path}: {e}") from e
    if points.size == 0:
        raise StorageError(f"{path} holds no points")
    if header != _header(points.shape[1]):
        raise StorageError(
            f"{path}: header {header!r} does not match {points.shape[1]} columns"
        )
    return points


def _json_ready(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, np.ndarray):
        return _json_ready(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    return value


def write_json(data: Any, path: PathLike) -> Path:
    path = Path(path)
    text = json.dumps(_json_ready(data), sort_keys=True, indent=2, ensure_ascii=False)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
    except OSError as e:
        raise StorageError(f"Cannot write {path}: {e}") from e
    logger.debug(f"Wrote {path}")
    return path


def read_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise StorageError(f"Cannot read JSON from {path}: {e}") from e


def write_report(report: ExperimentReport, path: PathLike) -> Path:
    """Persist a report; cell runtimes are excluded by the model"""
    return write_json(report.model_dump(mode="python"), path)


def write_diagnostics(
    diagnostics: ChainDiagnostics, directory: PathLike, stem: str = "diagnostics"
) -> Path:
    """Write <stem>.json and the energy trace <stem>_energy.csv next to it"""
    directory = Path(directory)
    trace_path = directory / f"{stem}_energy.csv"
    try:
        directory.mkdir(parents=True, exist_ok=True)
        with open(trace_path, "w", encoding="utf-8", newline="\n") as f:
            np.savetxt(
                f, np.asarray(diagnostics.energy_trace), fmt="%.17g", header="energy", comments=""
            )
    except OSError as e:
        raise StorageError(f"Cannot write {trace_path}: {e}") from e

    record: Dict[str, Any] = {
        **diagnostics.summary(),
        "energy_trace_path": trace_path.name,
        "tuning_trace": [list(pair) for pair in diagnostics.tuning_trace],
        "snapshot_iterations": sorted(diagnostics.snapshots),
        "rung_acceptance": [rung.acceptance_rate for rung in diagnostics.rungs],
    }
    return write_json(record, directory / f"{stem}.json")


def write_embedding(embedding: EmbeddingEstimate, path: PathLike) -> Path:
    """Persist the reference points of an embedding estimate"""
    return write_points(embedding.points, path)
