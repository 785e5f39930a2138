import numpy as np
import pytest

from texnoise import Raster


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


def raster_from(values, depth=16) -> Raster:
    return Raster(np.asarray(values, dtype=np.float64), depth=depth)
