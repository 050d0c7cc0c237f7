"""Defaults and runtime configuration"""

from .config import (
    EmbeddingSettings,
    GibbsRunConfig,
    InitKind,
    InitSpec,
    SamplerDefaults,
    resolve_beta,
    schedule_exponent,
)

__all__ = [
    "EmbeddingSettings",
    "GibbsRunConfig",
    "InitKind",
    "InitSpec",
    "SamplerDefaults",
    "resolve_beta",
    "schedule_exponent",
]
