import math

import pytest
from hypothesis import HealthCheck, settings

from zerogap.extremal import selberg_minorant
from zerogap.lfunctions import bundled_example_path, load_lfunction

# quadrature-heavy properties blow any wall-clock deadline
settings.register_profile(
    "numeric",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("numeric")

DELTA0 = math.log(2.0) / (2.0 * math.pi)
CERT_LENGTH = 10.0 * math.pi / math.log(2.0)


@pytest.fixture(scope="session")
def cert_minorant():
    half = CERT_LENGTH / 2.0
    return selberg_minorant(-half, half, DELTA0)


@pytest.fixture(scope="session")
def bundled():
    return load_lfunction(bundled_example_path())
