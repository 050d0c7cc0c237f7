import json
import sys
from pathlib import Path

import numpy as np
import pytest

# Make the src layout importable without installing the package
src_dir = Path(__file__).parent.parent.absolute() / "src"
if str(src_dir) not in sys.path:
    sys.path.insert(0, str(src_dir))

from repulse_quad.embedding.potential import QuadraticPotential  # noqa: E402
from repulse_quad.kernels import KernelFamily, KernelSpec, build_kernel  # noqa: E402
from repulse_quad.measures import UniformBall  # noqa: E402


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow statistical tests"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long statistical acceptance run")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    """Fixed-seed generator for a single test"""
    return np.random.default_rng(12345)


@pytest.fixture
def gaussian_kernel_2d():
    return build_kernel(KernelSpec(KernelFamily.GAUSSIAN, dimension=2))


@pytest.fixture
def riesz_kernel_3d():
    return build_kernel(KernelSpec(KernelFamily.TRUNCATED_RIESZ, dimension=3, epsilon=0.1))


@pytest.fixture
def log_kernel_2d():
    return build_kernel(KernelSpec(KernelFamily.TRUNCATED_LOG, dimension=2, epsilon=1e-2))


@pytest.fixture
def all_kernels():
    """One kernel per family in d = 3"""
    return [
        build_kernel(KernelSpec(KernelFamily.GAUSSIAN, dimension=3, lengthscale=0.8)),
        build_kernel(KernelSpec(KernelFamily.TRUNCATED_RIESZ, dimension=3, epsilon=0.1)),
        build_kernel(KernelSpec(KernelFamily.TRUNCATED_LOG, dimension=3, epsilon=0.1)),
        build_kernel(
            KernelSpec(KernelFamily.TRUNCATED_MULTIQUADRIC, dimension=3, epsilon=0.3)
        ),
    ]


@pytest.fixture
def unit_ball_3d():
    return UniformBall(3)


@pytest.fixture
def quadratic_2d():
    return QuadraticPotential(2)


@pytest.fixture
def fig1_config():
    """Minimal crystallization config document"""
    return {
        "kernel": {"family": "truncated_log", "epsilon": 0.01},
        "target": {"family": "uniform_ball", "dimension": 2},
        "gibbs": {"n": 20, "schedule": "n^3", "iterations": 30, "potential": "quadratic"},
        "experiment": {"replicates": 1},
        "output_dir": "results",
        "seed": 7,
    }


@pytest.fixture
def config_file(tmp_path, fig1_config):
    """fig1_config written to a temporary JSON file"""
    path = tmp_path / "fig1.json"
    path.write_text(json.dumps(fig1_config), encoding="utf-8")
    return path
