import numpy as np
import pytest

from Rotary_Coverage_Sim.field.density import benchmark_density, polynomial_density, uniform_density
from Rotary_Coverage_Sim.field.quadrature import QuadratureConfig
from Rotary_Coverage_Sim.geometry.region import Ellipse


@pytest.fixture
def unit_disk():
    return Ellipse(1.0, 1.0)


@pytest.fixture
def ellipse():
    return Ellipse(5.0, 3.0)


@pytest.fixture
def uniform():
    return uniform_density(1.0)


@pytest.fixture
def benchmark(ellipse):
    return benchmark_density(ellipse.bounding_radius)


@pytest.fixture
def smooth_density(ellipse):
    # 1 + 0.1 x + 0.02 y^2 stays above 0.5 on the 5 x 3 ellipse
    return polynomial_density([[0, 0, 1.0], [1, 0, 0.1], [0, 2, 0.02]], ellipse)


@pytest.fixture
def fine_quad():
    return QuadratureConfig(64, 64)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
