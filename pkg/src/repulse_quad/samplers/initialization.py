import logging
from typing import Optional

import numpy as np

from ..common.exceptions import ValidationError
from ..core.config import InitKind, InitSpec, SamplerDefaults
from ..energy.configuration import ParticleConfiguration
from ..measures.base import TargetMeasure

logger = logging.getLogger(__name__)


def initial_configuration(
    init: InitSpec,
    n: int,
    d: int,
    rng: np.random.Generator,
    target: Optional[TargetMeasure] = None,
) -> ParticleConfiguration:
    """Starting configuration of a MALA chain"""
    if init.kind == InitKind.COLD_GAUSSIAN:
        points = init.mean + init.std * rng.standard_normal((n, d))

    elif init.kind == InitKind.WARM_FROM_TARGET:
        if target is None:
            raise ValidationError("warm_from_target initialisation needs a target")
        points = target.sample(rng, n)

    elif init.kind == InitKind.WARM_MODES:
        # Gaussian mixture on the target's mode centres
        if target is None:
            raise ValidationError("warm_modes initialisation needs a target")
        centers = target.modes()
        labels = rng.integers(len(centers), size=n)
        std = np.sqrt(SamplerDefaults.WARM_MODES_VARIANCE)
        points = centers[labels] + std * rng.standard_normal((n, d))

    else:
        from ..io.storage import read_points

        points = read_points(init.path)

    points = np.asarray(points, dtype=float)
    if points.shape != (n, d):
        raise ValidationError(
            f"Initial configuration has shape {points.shape}, expected {(n, d)}"
        )
    logger.debug(f"Initialised {n} particles in R^{d} ({init.kind.value})")
    return ParticleConfiguration(points)
