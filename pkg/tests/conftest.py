from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

from betalac import AlgebraicBase  # noqa: E402


@pytest.fixture(scope="session")
def base2() -> AlgebraicBase:
    return AlgebraicBase.from_coefficients([-2, 1])


@pytest.fixture(scope="session")
def golden() -> AlgebraicBase:
    return AlgebraicBase.from_coefficients([-1, -1, 1])


@pytest.fixture(scope="session")
def salem_quartic() -> AlgebraicBase:
    return AlgebraicBase.from_coefficients([1, -1, -1, -1, 1])


def micro(n: int) -> Fraction:
    return Fraction(1, 10**n)
