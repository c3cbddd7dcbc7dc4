import numpy as np
import pytest
from typer.testing import CliRunner

from physics.twoslit import SlitGeometry
from physics.vacuum import ChargedFieldSpec


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


@pytest.fixture
def scalar() -> ChargedFieldSpec:
    return ChargedFieldSpec(kappa=1.0, spin=0.0)


@pytest.fixture
def reference_geometry() -> SlitGeometry:
    """lambda = 0.58 um, d = 50 um, w = 5 um, D = 1 m"""
    return SlitGeometry(
        slit_width=5e-6,
        half_separation=50e-6,
        screen_distance=1.0,
        wavelength=0.58e-6,
    )


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
