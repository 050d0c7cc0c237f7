"""Run configuration files, CSV/JSON artefacts and SVG figures"""

from .config import RunConfigFile, config_hash, parse_config, parse_config_data, serialize
from .storage import (
    read_json,
    read_points,
    write_diagnostics,
    write_embedding,
    write_json,
    write_points,
    write_report,
)
from .svg import Axes, emit_pointcloud_svg, emit_series_svg

__all__ = [
    "RunConfigFile",
    "config_hash",
    "parse_config",
    "parse_config_data",
    "serialize",
    "read_json",
    "read_points",
    "write_diagnostics",
    "write_embedding",
    "write_json",
    "write_points",
    "write_report",
    "Axes",
    "emit_pointcloud_svg",
    "emit_series_svg",
]
