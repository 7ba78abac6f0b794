from __future__ import annotations

import pytest

from pqcalc import PqParams


@pytest.fixture
def ip():
    """Integration-mode parameters used throughout the worked examples."""
    return PqParams.integration(0.8, 0.4)


@pytest.fixture
def dp():
    return PqParams.derivative(2.0, 3.0)
