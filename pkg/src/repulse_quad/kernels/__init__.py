"""Interaction kernels"""

import logging
from typing import Dict, Type

from ..common.exceptions import ValidationError
from .base import BaseKernel, KernelFamily, KernelSpec
from .gaussian import GaussianKernel
from .logarithmic import TruncatedLogKernel
from .multiquadric import TruncatedMultiquadricKernel
from .riesz import TruncatedRieszKernel

logger = logging.getLogger(__name__)

KERNEL_TYPES: Dict[KernelFamily, Type[BaseKernel]] = {
    kernel_class.family: kernel_class
    for kernel_class in (
        GaussianKernel,
        TruncatedRieszKernel,
        TruncatedLogKernel,
        TruncatedMultiquadricKernel,
    )
}


def build_kernel(spec: KernelSpec) -> BaseKernel:
    """Instantiate the kernel class registered for spec.family"""
    kernel_class = KERNEL_TYPES.get(spec.family)
    if kernel_class is None:
        raise ValidationError(f"Unknown kernel family: {spec.family}")
    kernel = kernel_class(spec)
    logger.debug(f"Built kernel {kernel.describe()}")
    return kernel


__all__ = [
    "BaseKernel",
    "KernelFamily",
    "KernelSpec",
    "GaussianKernel",
    "TruncatedRieszKernel",
    "TruncatedLogKernel",
    "TruncatedMultiquadricKernel",
    "KERNEL_TYPES",
    "build_kernel",
]
