import os

import pytest
from hypothesis import HealthCheck, settings

from config import RunConfig
from polynomials import LPoly

settings.register_profile('default', max_examples=200, deadline=None)
settings.register_profile('acceptance', max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'default'))


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ('QCLAB_THREADS', 'QCLAB_DATABASE_URL', 'QCLAB_PROFILE'):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def q_poly():
    """Build a polynomial in q from coefficients, lowest degree first"""
    def build(*coeffs, shift=0):
        return LPoly.from_q_coeffs(coeffs, shift)
    return build


@pytest.fixture
def run_config():
    def build(command='verify-qcong', **overrides):
        overrides.setdefault('threads', 1)
        return RunConfig.from_profile(command, 'testing', **overrides)
    return build
