import numpy as np
import pytest

from nuclab.potential import PotentialSpec


@pytest.fixture
def default_spec():
    return PotentialSpec()


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
