"""
Shared fixtures for the dmdplace test suite.

The default truth data and its rank-6 DMD fit are expensive enough to compute once per session.
"""
import pytest

from dmdplace.identification import build_shifted_snapshots, fit_dmd
from dmdplace.model import DEFAULT_MODES, simulate
from dmdplace.placement import DesignTemplate


@pytest.fixture(scope="session")
def default_data():
    return simulate()


@pytest.fixture(scope="session")
def default_model(default_data):
    return fit_dmd(build_shifted_snapshots(default_data, q=2, stride=10), rank=6)


@pytest.fixture(scope="session")
def three_modes():
    return DEFAULT_MODES.dominant(3)


@pytest.fixture(scope="session")
def toy_template():
    """Five candidates, 1 kHz sampling over 1 s; resolves the first three modes."""
    return DesignTemplate(n_candidates=5, dt=1e-3, t_final=1.0, stride=1)
