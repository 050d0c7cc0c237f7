"""On-disk run configuration.

A run is described by one JSON document with the sections kernel, target,
gibbs and experiment plus output_dir and seed. Parsing is strict: unknown keys
are rejected, and every problem found is reported at once as a JSON pointer
with a message. The config hash is a digest of the canonical document without
output_dir, so moving the output root does not change it.
"""

import hashlib
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as PydanticValidationError
from pydantic import field_validator

from ..common.exceptions import ConfigIssue, ConfigurationError, RepulseQuadError
from ..core.config import (
    EmbeddingSettings,
    GibbsRunConfig,
    InitKind,
    InitSpec,
    SamplerDefaults,
    schedule_exponent,
)
from ..experiments.multimodal import VARIANTS
from ..experiments.variance import INTEGRANDS
from ..kernels.base import TRUNCATED_FAMILIES, KernelFamily, KernelSpec
from ..measures.ball import UniformBall
from ..measures.base import TargetMeasure
from ..measures.gaussian import TruncatedGaussian
from ..measures.mixture import mixture_on_circle

logger = logging.getLogger(__name__)

HASH_LENGTH = 16


def _check_schedule(tag: str) -> str:
    if tag != "explicit":
        try:
            schedule_exponent(tag)
        except RepulseQuadError as e:
            raise ValueError(str(e))
    return tag


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class KernelSection(StrictModel):
    family: KernelFamily
    lengthscale: float = Field(1.0, gt=0)
    epsilon: Optional[float] = Field(None, gt=0)
    exponent: Optional[float] = Field(None, ge=0)
    weight: float = Field(1.0, ge=0)


class TargetKind(str, Enum):
    UNIFORM_BALL = "uniform_ball"
    TRUNCATED_GAUSSIAN = "truncated_gaussian"
    MIXTURE_ON_CIRCLE = "mixture_on_circle"


class TargetSection(StrictModel):
    family: TargetKind
    dimension: int = Field(..., ge=1)
    radius: float = Field(1.0, gt=0)
    variance: Optional[float] = Field(None, gt=0)
    trunc_radius: Optional[float] = Field(None, gt=0)
    center: Optional[List[float]] = None
    components: Optional[int] = Field(None, ge=1)
    circle_radius: float = Field(1.0, gt=0)


class InitSection(StrictModel):
    kind: InitKind = InitKind.COLD_GAUSSIAN
    mean: float = 0.0
    std: float = Field(1.0, ge=0)
    path: Optional[str] = None


class PotentialKind(str, Enum):
    EQUILIBRATED = "equilibrated"
    QUADRATIC = "quadratic"


class GibbsSection(StrictModel):
    n: Optional[int] = Field(None, ge=1)
    schedule: str = SamplerDefaults.DEFAULT_SCHEDULE
    beta: Optional[float] = Field(None, gt=0)
    alpha0: float = Field(SamplerDefaults.DEFAULT_ALPHA0, gt=0)
    iterations: int = Field(SamplerDefaults.DEFAULT_ITERATIONS, ge=1)
    init: InitSection = Field(default_factory=InitSection)
    anneal_levels: Optional[int] = Field(None, ge=1)
    tune: bool = True
    pilot_steps: int = Field(SamplerDefaults.PILOT_STEPS, ge=1)
    record_every: int = Field(1, ge=1)
    potential: PotentialKind = PotentialKind.EQUILIBRATED
    embedding_size: int = Field(SamplerDefaults.DEFAULT_EMBEDDING_SIZE, ge=1)
    embedding_path: Optional[str] = None
    proposal_variance: float = Field(SamplerDefaults.DEFAULT_PROPOSAL_VARIANCE, ge=0)

    @field_validator("schedule")
    @classmethod
    def _known_schedule(cls, value: str) -> str:
        return _check_schedule(value)


class ExperimentSection(StrictModel):
    n_grid: List[int] = Field(default_factory=lambda: [64, 128, 256, 512])
    replicates: int = Field(1, ge=1)
    integrand: str = "kernel_at_origin"
    identical_replicates: bool = False
    reference_length: int = Field(SamplerDefaults.DEFAULT_REFERENCE_LENGTH, ge=1)
    schedules: Optional[List[str]] = None
    r_grid: Optional[List[float]] = None
    variants: List[str] = Field(default_factory=lambda: list(VARIANTS))
    snapshots: List[int] = Field(default_factory=lambda: [5000, 10000, 15000])
    threads: int = Field(1, ge=1)

    @field_validator("n_grid", "snapshots")
    @classmethod
    def _positive_entries(cls, values: List[int]) -> List[int]:
        if not values or any(v < 1 for v in values):
            raise ValueError("must be a non-empty list of positive integers")
        return values

    @field_validator("schedules")
    @classmethod
    def _known_schedules(cls, values: Optional[List[str]]) -> Optional[List[str]]:
        if values is None:
            return None
        if not values:
            raise ValueError("must list at least one schedule")
        return [_check_schedule(v) for v in values]

    @field_validator("integrand")
    @classmethod
    def _known_integrand(cls, value: str) -> str:
        if value not in INTEGRANDS:
            raise ValueError(f"unknown integrand; available: {', '.join(sorted(INTEGRANDS))}")
        return value

    @field_validator("variants")
    @classmethod
    def _known_variants(cls, values: List[str]) -> List[str]:
        unknown = [v for v in values if v not in VARIANTS]
        if not values or unknown:
            raise ValueError(f"variants must be drawn from {list(VARIANTS)}")
        return values

    @field_validator("r_grid")
    @classmethod
    def _non_negative_radii(cls, values: Optional[List[float]]) -> Optional[List[float]]:
        if values is not None and (not values or any(v < 0 for v in values)):
            raise ValueError("must be a non-empty list of non-negative radii")
        return values


class RunConfigFile(StrictModel):
    """Validated run configuration"""

    kernel: KernelSection
    target: TargetSection
    gibbs: GibbsSection = Field(default_factory=GibbsSection)
    experiment: ExperimentSection = Field(default_factory=ExperimentSection)
    output_dir: str = "results"
    seed: int = Field(..., ge=0, lt=2**64)

    def kernel_spec(self) -> KernelSpec:
        return KernelSpec(
            family=self.kernel.family,
            dimension=self.target.dimension,
            lengthscale=self.kernel.lengthscale,
            epsilon=self.kernel.epsilon,
            exponent=self.kernel.exponent,
            weight=self.kernel.weight,
        )

    def target_measure(self) -> TargetMeasure:
        section = self.target
        if section.family == TargetKind.UNIFORM_BALL:
            return UniformBall(section.dimension, section.radius)
        if section.family == TargetKind.TRUNCATED_GAUSSIAN:
            return TruncatedGaussian(
                section.dimension,
                variance=section.variance,
                trunc_radius=section.trunc_radius,
                center=section.center,
            )
        return mixture_on_circle(
            section.components,
            trunc_radius=section.trunc_radius,
            variance=section.variance,
            circle_radius=section.circle_radius,
        )

    def embedding_settings(self) -> EmbeddingSettings:
        return EmbeddingSettings(
            size=self.gibbs.embedding_size,
            proposal_std=self.gibbs.proposal_variance**0.5,
        )

    def gibbs_config(self, n: Optional[int] = None) -> GibbsRunConfig:
        """Runtime Gibbs config; n falls back to gibbs.n"""
        n = n if n is not None else self.gibbs.n
        if n is None:
            raise ConfigurationError([ConfigIssue("/gibbs/n", "required by this command")])
        section = self.gibbs
        return GibbsRunConfig(
            n=n,
            d=self.target.dimension,
            schedule=section.schedule,
            beta_value=section.beta,
            alpha0=section.alpha0,
            iterations=section.iterations,
            seed=self.seed,
            init=InitSpec(
                kind=section.init.kind,
                mean=section.init.mean,
                std=section.init.std,
                path=section.init.path,
            ),
            anneal_levels=section.anneal_levels,
            tune=section.tune,
            pilot_steps=section.pilot_steps,
            record_every=section.record_every,
        )


def _pointer(location) -> str:
    return "/" + "/".join(str(part) for part in location) if location else ""


def _cross_field_issues(config: RunConfigFile) -> List[ConfigIssue]:
    issues = []
    if config.kernel.family in TRUNCATED_FAMILIES and config.kernel.epsilon is None:
        issues.append(ConfigIssue("/kernel/epsilon", f"required for {config.kernel.family.value}"))

    target = config.target
    if target.family in (TargetKind.TRUNCATED_GAUSSIAN, TargetKind.MIXTURE_ON_CIRCLE):
        for name in ("variance", "trunc_radius"):
            if getattr(target, name) is None:
                issues.append(ConfigIssue(f"/target/{name}", f"required for {target.family.value}"))
    if target.family == TargetKind.MIXTURE_ON_CIRCLE:
        if target.components is None:
            issues.append(ConfigIssue("/target/components", "required for mixture_on_circle"))
        if target.dimension != 2:
            issues.append(ConfigIssue("/target/dimension", "mixture_on_circle is two-dimensional"))
    if target.center is not None and len(target.center) != target.dimension:
        issues.append(
            ConfigIssue("/target/center", f"expected {target.dimension} coordinates")
        )

    gibbs = config.gibbs
    if gibbs.schedule == "explicit" and gibbs.beta is None:
        issues.append(ConfigIssue("/gibbs/beta", "required for the explicit schedule"))
    if gibbs.init.kind == InitKind.FROM_FILE and not gibbs.init.path:
        issues.append(ConfigIssue("/gibbs/init/path", "required for from_file"))
    return issues


def parse_config_data(data: Any, overrides: Optional[Mapping[str, Any]] = None) -> RunConfigFile:
    """Validate an already decoded JSON document"""
    if isinstance(data, dict) and overrides:
        data = {**data, **overrides}
    try:
        config = RunConfigFile.model_validate(data)
    except PydanticValidationError as e:
        issues = [ConfigIssue(_pointer(error["loc"]), error["msg"]) for error in e.errors()]
        raise ConfigurationError(issues) from None

    issues = _cross_field_issues(config)
    if issues:
        raise ConfigurationError(issues)
    return config


def parse_config(
    path: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None
) -> RunConfigFile:
    """Read and validate a JSON run configuration"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError([ConfigIssue("", f"cannot read {path}: {e}")]) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigurationError(
            [ConfigIssue("", f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")]
        ) from None
    config = parse_config_data(data, overrides)
    logger.info(f"Loaded config {path} (hash {config_hash(config)})")
    return config


def canonical_document(config: RunConfigFile) -> Dict[str, Any]:
    return config.model_dump(mode="json")


def serialize(config: RunConfigFile) -> str:
    """Canonical JSON: sorted keys, compact separators, every default spelled out"""
    return json.dumps(canonical_document(config), sort_keys=True, separators=(",", ":"))


def config_hash(config: RunConfigFile) -> str:
    """First 16 hex characters of the SHA-256 of the canonical form without output_dir"""
    document = canonical_document(config)
    document.pop("output_dir", None)
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:HASH_LENGTH]
