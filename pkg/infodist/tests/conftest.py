"""
Shared fixtures for the infodist test suite.

Run with: python -m pytest infodist/tests -v
"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from infodist.measurement.kraus import royer
from infodist.models.statistical import bloch_rotation_model, classical_binary_model
from infodist.utils.logging import get_log_buffer


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bloch_half():
    """Bloch rotation model with radius 0.5."""
    return bloch_rotation_model(0.5)


@pytest.fixture
def binary():
    """Commuting qubit model diag(cos²(θ/2), sin²(θ/2))."""
    return classical_binary_model()


@pytest.fixture
def royer_quarter():
    """Royer measurement at theta_m = sigma_m = π/2."""
    return royer(np.pi / 2, np.pi / 2)


@pytest.fixture
def log_buffer():
    buffer = get_log_buffer()
    buffer.clear()
    yield buffer
    buffer.clear()
